"""Exception types raised by the toolkit.

Every error carries a human-readable message; parsers additionally report
the offending file and line so a bad corpus or database line can be found
without a debugger.
"""

from __future__ import annotations


class GlossWsdError(Exception):
    """Base class for all toolkit errors."""


class MissingFile(GlossWsdError):
    """A required input file or directory does not exist."""


class MalformedLine(GlossWsdError):
    """A line in a text database file does not match its documented format."""

    def __init__(self, path, lineno: int, content: str, reason: str):
        self.path = str(path)
        self.lineno = lineno
        self.content = content
        self.reason = reason
        super().__init__(f"{self.path}:{lineno}: {reason}: {content!r}")


class MalformedSenseKey(GlossWsdError):
    """A sense key string does not match lemma%d:dd:dd:head:id."""


class MalformedXml(GlossWsdError):
    """A corpus file is not valid XML or violates the corpus schema."""


class DuplicateInstanceId(GlossWsdError):
    """The same instance id occurs more than once in a corpus or key file."""


class NoCandidates(GlossWsdError):
    """The sense inventory has no entry at all for a target's lemma."""


class GoldOutsideInventory(GlossWsdError):
    """A gold key is not among the generated candidates (warning-level)."""


class IoFailure(GlossWsdError):
    """Writing an output file failed."""


class MalformedScoreLine(GlossWsdError):
    """A row in a score file is missing columns or not parseable."""


class OutOfRangeProbability(GlossWsdError):
    """A score file carries a p_yes outside [0, 1]."""


class ScoreCoverageGap(GlossWsdError):
    """Strict mode: score file and pair set do not cover each other exactly."""


class DuplicateScore(GlossWsdError):
    """The same pair_id is scored more than once."""


class UnknownInstance(GlossWsdError):
    """A prediction refers to an instance id absent from the gold keys."""


class ManifestError(GlossWsdError):
    """The run manifest is malformed or references unknown names."""
