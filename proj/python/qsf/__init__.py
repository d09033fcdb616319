"""q-special functions, q-Borel-Laplace resummation and connection formulas.

Thin package around the compiled module: scalar q-objects (theta, rphi_s,
q-exponentials, the two q-Airy analogues), the spiral/contour q-Laplace
resummation of the divergent series, and pointwise verification of the
connection identities with machine-readable reports.
"""

try:
    from . import _qsf as _impl  # installed layout: extension inside the package
except ImportError:  # in-tree test layout: extension on sys.path
    import _qsf as _impl

qpochhammer = _impl.qpochhammer
qpochhammer_inf = _impl.qpochhammer_inf
theta = _impl.theta
phi = _impl.phi
eq = _impl.eq
Eq = _impl.Eq
Aq = _impl.Aq
Aiq = _impl.Aiq
eval_solution = _impl.eval_solution
resum_2f0 = _impl.resum_2f0
resum_rf0 = _impl.resum_rf0
residue_laplace_qairy = _impl.residue_laplace_qairy
verify_identity = _impl.verify_identity
audit_normalization = _impl.audit_normalization
ellipticity_check = _impl.ellipticity_check
sample_points = _impl.sample_points
known_identities = _impl.known_identities

__version__ = _impl.__version__

__all__ = [
    "qpochhammer",
    "qpochhammer_inf",
    "theta",
    "phi",
    "eq",
    "Eq",
    "Aq",
    "Aiq",
    "eval_solution",
    "resum_2f0",
    "resum_rf0",
    "residue_laplace_qairy",
    "verify_identity",
    "audit_normalization",
    "ellipticity_check",
    "sample_points",
    "known_identities",
]
