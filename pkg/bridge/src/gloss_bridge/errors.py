class BridgeError(Exception):
    """Base class for bridge errors."""


class PairFileError(BridgeError):
    """A pair file is missing, malformed, or lacks required labels."""


class VariantMismatch(BridgeError):
    """Pair file construction mode does not match the model variant."""


class SpanError(BridgeError):
    """A target span does not fit the tokenized context."""


class CheckpointError(BridgeError):
    """A checkpoint is unreadable or contradicts the requested variant."""
