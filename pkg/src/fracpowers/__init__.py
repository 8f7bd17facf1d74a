"""Certified computation of ||alpha^n||, the distance from powers of a real
algebraic number alpha > 1 to the nearest integer, with the Liouville-type
lower bound, Pisot upper bound and the case analysis that governs them.
"""

from .bounds import (BoundReport, BoundRow, BoundSummary, NuStat, liouville_lower, nu_stat,
                     pisot_upper_check, tau_margin, verify, verify_liouville)
from .certroots import (AlgebraicNumber, ModulusClasses, RootSet, distinguished_root, isolate_roots,
                        modulus_classes, refine, unit_circle_roots)
from .classify import (BoydDecomposition, Classification, PisotCertificate, boyd_decompose, classify,
                       compute_C, is_pisot, n_alpha_contains, pisot_eta, qpu_check, smallest_h)
from .errors import (BoydMismatch, CertificationError, FracPowError, InsufficientData,
                     NoRootGreaterThanOne, NotPisot, NotSquarefree, ParseError, ScreenFailure,
                     Undecided, ZeroNotExcluded)
from .interval import ComplexBox, Interval
from .intpoly import (IntPolynomial, ScreenReport, minpoly_of_power, parse_poly, power_sums,
                      power_support_decompose, screen_irreducible)
from .powerfrac import (DecayFit, PowerFracRecord, ProbeValue, decay_fit, lambda_probe, nearest_power,
                        nearest_power_interval, rational_power, scan)

__version__ = "0.1.0"
