"""
Exception hierarchy for the hcover toolkit
Library code raises these; only cli.py turns them into exit codes
"""


class HCoverError(Exception):
    """Base class for every error raised by the toolkit"""


class GraphParseError(HCoverError, ValueError):
    """Malformed graph6 or edge-list input"""

    def __init__(self, message, offset=None):
        self.offset = offset
        if offset is not None:
            message = f"{message} (at offset {offset})"
        super().__init__(message)


class GraphArgumentError(HCoverError, ValueError):
    """Invalid argument to a graph operation"""


class ProfileSizeError(HCoverError, ValueError):
    """Graph too large for an exact coverage profile"""


class InfeasibleError(HCoverError, ValueError):
    """No H-covered graph exists for the requested target"""


class ContractError(HCoverError, ValueError):
    """A precondition on a structured input does not hold"""


class BudgetExceeded(HCoverError, RuntimeError):
    """A search exceeded its size cap or node budget"""


class ConfigError(HCoverError, ValueError):
    """Bad value in the environment configuration"""
