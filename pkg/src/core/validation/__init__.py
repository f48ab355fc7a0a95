"""Transform-identity validation suite"""

from .suite import ValidationSuite, ValidationReport, CheckResult, LEVELS, run_validation_suite


__all__ = ['ValidationSuite', 'ValidationReport', 'CheckResult', 'LEVELS', 'run_validation_suite']
