"""Fine spectra and ergodic properties of the generalized difference operator B(r,s)."""
from .errors import (AggregationViolation, BandspecError, ContinuityFailure,
                     DeclaredMismatch, HypothesisFailure, InvariantViolation,
                     SpectrumViolation, UnboundedRatio, ValidationError)
from .weights import (Affine, AlphaTable, ConjugateExponent, GeometricExp, LogShift,
                      RatioAsymptotics, SeriesVerdict, Unit, WeightTable,
                      boundary_series_test, grade_weight, ratio_asymptotics,
                      weighted_norm)
from .operator import (BandParams, SeqVector, TruncationConfig, apply, apply_adjoint,
                       cesaro_apply, finite_section, log_power_column, norm_bounds,
                       power_column)
from .resolvent import resolvent_apply, resolvent_kernel, summability_certificates
from .regions import RadialRegion
from .spectra import (FineSpectrum, PointClass, adjoint_eigen_membership,
                      classify_point, fine_spectrum, spectral_radius)
from .grading import (GradedFineSpectrum, PowerSeriesSpace, graded_fine_spectrum,
                      per_grade_crosscheck, validate_space)
from .ergodics import (ErgodicReport, SpaceDescriptor, TriState, Verdict,
                       cesaro_experiment, check_chain, classify_ergodic,
                       growth_experiment)
from .pseudospectrum import GridSpec, pseudo_grid, sigma_min, sigma_min_inverse

__version__ = "0.1.0"
