"""Error hierarchy shared across the toolkit.

Two families matter to callers (and to the CLI's exit codes):

* ``InputError``    -- the data handed to us is unusable: unreadable files,
                       malformed lines, inconsistent identifiers. Exit code 2.
* ``ContractError`` -- the data was readable but violates an internal
                       contract: schema hashes disagree, lengths mismatch,
                       a model file is from the future. Exit code 3.

Anything else escaping the CLI is reported as an internal error, exit code 4.
"""

from __future__ import annotations


class ActionValueError(Exception):
    """Base class for all toolkit errors."""


class InputError(ActionValueError):
    """User-supplied data is unusable."""


class ContractError(ActionValueError):
    """Readable data that violates an internal contract."""


# --- input family ---------------------------------------------------------


class MalformedLine(InputError):
    """A line of an event log could not be parsed."""

    def __init__(self, line_no: int, reason: str) -> None:
        self.line_no = line_no
        self.reason = reason
        super().__init__(f"line {line_no}: {reason}")


class UnmappedType(InputError):
    """Strict conversion met a provider event type with no mapping."""


class MixedGames(InputError):
    """One event stream carried more than one game id."""


class UnknownTeam(InputError):
    """An action's team is neither the home nor the away team."""


class DuplicateOrdinal(InputError):
    """Two actions of one game share an ordinal."""


class UnsortableTimestamps(InputError):
    """Timestamps are missing, negative or otherwise unsortable."""


class EmptyInput(InputError):
    """An operation that needs data received none."""


class ZeroMinutes(InputError):
    """A per-90 rating was requested for zero or negative minutes."""


class MissingInput(InputError):
    """A required input file or directory does not exist."""


class CorruptFile(InputError):
    """A model or data file failed structural checks."""


# --- contract family ------------------------------------------------------


class SchemaMismatch(ContractError):
    """Feature schema hash disagreement between artifacts."""


class LengthMismatch(ContractError):
    """Two aligned sequences have different lengths."""


class VersionMismatch(ContractError):
    """A persisted artifact declares an unsupported format version."""


class DegenerateInput(ContractError):
    """A learner received an empty or unusable training matrix."""


class MissingState(ContractError):
    """Valuation needs a state/probability pair that was not supplied."""


class NotFitted(ContractError):
    """An estimator was used before fit()."""
