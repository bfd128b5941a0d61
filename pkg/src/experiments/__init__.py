"""
    Experiment presets, the runner with its run ledger, and the verification battery.
"""

from .presets import PRESETS, list_presets, preset
from .runner import ExperimentRunner, read_ledger, run_experiment
from .verify import LEVELS, verify_suite, write_report
