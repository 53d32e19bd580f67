class LexiclustError(Exception):
    """Base class for errors raised by this package."""


class WordNetError(LexiclustError):
    """Missing, malformed or inconsistent WordNet files."""


class EmptyPhraseError(LexiclustError, ValueError):
    """A phrase has no content left after tokenization or noun normalization."""

    def __init__(self, raw: str, message: str | None = None):
        self.raw = raw
        super().__init__(message or f"phrase has no noun content: {raw!r}")


class MatrixFormatError(LexiclustError):
    """A matrix file is truncated, malformed or of the wrong version."""


class DigestError(MatrixFormatError):
    """Matrix manifest does not agree with its phrase list."""
