"""Fitness Dependent Optimizer workbench: core FDO, variants, benchmarks, bin packing and a run harness."""

from .adaptive import AdaptiveFDO, AdaptiveParams
from .core import FDO, FdoParams, RunResult, run
from .objective import ObjectiveSpec
from .variants import CFDO, IFDO, MFDO, MIFDO, EnhancedFDO

__all__ = [
    "AdaptiveFDO",
    "AdaptiveParams",
    "CFDO",
    "EnhancedFDO",
    "FDO",
    "FdoParams",
    "IFDO",
    "MFDO",
    "MIFDO",
    "ObjectiveSpec",
    "RunResult",
    "run",
]
__version__ = "0.1.0"
