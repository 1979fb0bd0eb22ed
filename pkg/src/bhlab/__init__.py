"""Zero-error codes for the noiseless two-way adder channel: explicit
B_h-set constructions, brute-force property oracles, exact configuration
enumeration, achievable-rate formulas, random-coding pipelines, and a
Renyi-entropy / majorization toolbox."""

__version__ = "0.1.0"

from . import (algebra, cli, configurations, constructions, entropy, errors,
               oracle, random_coding, rates)

__all__ = ["algebra", "cli", "configurations", "constructions", "entropy",
           "errors", "oracle", "random_coding", "rates", "__version__"]
