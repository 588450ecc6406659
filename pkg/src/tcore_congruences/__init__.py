"""t-core partition counts, eta-quotient certificates, and finite-check
congruence proofs for a_p(mn + t) modulo small integers."""

from .qseries import TruncatedSeries, dilate, euler_function, inverse, mul, power, reduce_mod
from .tcore import Partition, a3_parity, hook_table, is_tcore, tcore_count_oracle, tcore_series
from .etaquot import EtaQuotient, build_B, build_B_density, build_D, certify_holomorphic, expand
from .raduseller import CongruenceClaim, VerificationReport, verify_claim
from .density import DensityTable, measure_density

__version__ = "0.1.0"
