"""Period-p Brauer classes over truncated mixed-characteristic local fields.

Layers, bottom up: rational-function fields of characteristic p with a
chosen p-basis (`fields`), differential forms and the wedge pairing
(`differentials`), degree-two Milnor symbols decided through the
differential symbol (`milnor`), the truncated local-field model and its
unit filtration (`cdvf`), the symbol-rewriting engine with graded data,
normal forms, splitting fields and index bounds (`brauer`), and a 2-adic
specialization oracle (`hilbert`).
"""

from .errors import (AlgebraError, BadSpecialization, DependentGenerators,
                     DivisionByZero, HypothesisFailed, LevelOutOfRange,
                     NonUnit, NotInBr1, NotInLevel, ParseError,
                     UnresolvedSymbolRelation, UnsupportedPrime, ZeroEntry)
from .fields import (Embedding, FieldDescriptor, FrobeniusDecomposition,
                     RankCertificate, RatFunc, embed_element,
                     frobenius_decompose, p_independence, pth_root, rf_arith,
                     subst_element)
from .differentials import (Omega1Form, Omega2Form, d, dlog, kernel_decompose,
                            monomial_root_images, nonvanishing_degree_bound,
                            paired_wedge_form, pushforward_omega2,
                            restrict_omega2, wedge)
from .milnor import SymbolSum, h2p, k2_is_zero, k2_restrict
from .cdvf import (CdvfElement, CdvfModel, TruncatedUnit, UnitLayers,
                   cdvf_arith, filtration_cutoff, lift_unit, one_unit,
                   reduce_unit, unit_layers)
from .hilbert import hilbert2
from .brauer import (INFINITE_LEVEL, BrauerClass, BrDimReport, GradedDatum0,
                     GradedDatumI, IndexBounds, NormalForm, SplittingField,
                     brdim_report, filtration_level, hilbert_specialize,
                     index_bounds, normal_form, paired_basis_class,
                     period_power_bound, reduce_to_level_one, rho0_extract,
                     rho0_forward, rhoi_extract, rhoi_forward,
                     sample_admissible_points, splitting_field)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
