# partdist - Core Module
"""
Controller and job management components.
"""

from .verification_controller import VerificationController, InvalidParametersError
from .job_manager import JobManager, chunked

__all__ = ['VerificationController', 'InvalidParametersError', 'JobManager', 'chunked']
