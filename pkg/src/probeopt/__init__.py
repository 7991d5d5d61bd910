"""Joint probing-power and sensor-amplification design for RF object sensing."""
from .characterize import (CharacterizationOptions, CharacterizationTrace, estimate_moments,
                           recursive_characterization, simulate_snapshots)
from .errors import (ConfigurationError, ConvergenceError, DegenerateInputError,
                     InfeasibleError, ProbeOptError, SingularityError, UnboundedError)
from .optimizers import (ALGORITHMS, OptimizationResult, OptimizerOptions,
                         asymptotic_power_opt, max_amp_baseline, mmse_alternating, mrc_joint,
                         run_algorithm, zf_alternating)
from .receivers import COMBINERS, mmse, mrc, sinr, zf
from .scene import (ArrayGeometry, ChannelSet, ChannelSpec, Scenario, SceneObject,
                    bundled_scenario_path, load_scenario, reference_scenario, save_scenario,
                    synthesize_channels)
from .vmaci import VmaciModel, coherence, model_for

__version__ = "0.1.0"
