"""Exception hierarchy shared across the engine.

Every error raised on a user-facing path derives from GuardrailError so the
CLI and HTTP layers can map them to exit codes / status codes uniformly.
"""


class GuardrailError(Exception):
    """Base class for all engine errors."""


class IngestError(GuardrailError):
    """Malformed or inconsistent raw input."""


class TransformError(GuardrailError):
    """A dataset transform cannot be applied."""


class DataValidationError(GuardrailError):
    """Dataset fails the missing-data policy."""


class StrategyError(GuardrailError):
    """A guardrail strategy cannot run on the given inputs."""


class ProviderError(GuardrailError):
    """Peer provider failure (unknown focal, endpoint trouble, bad responses)."""


class EvaluationError(GuardrailError):
    """Evaluation operation received invalid inputs."""
