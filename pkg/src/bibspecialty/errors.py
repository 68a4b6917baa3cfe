"""Exception types raised across the package."""


class BibSpecialtyError(Exception):
    """Base class for every error this package raises on purpose."""


class CorpusError(BibSpecialtyError):
    pass


class DuplicateId(CorpusError):
    def __init__(self, pub_id: str):
        super().__init__(f"duplicate publication id {pub_id!r}")
        self.pub_id = pub_id


class MalformedRecord(CorpusError):
    def __init__(self, index: int, reason: str):
        super().__init__(f"malformed record at {index}: {reason}")
        self.index = index
        self.reason = reason


class MissingField(CorpusError):
    def __init__(self, pub_id: str | None, field: str):
        super().__init__(f"record {pub_id or '<no id>'} is missing required field {field!r}")
        self.pub_id = pub_id
        self.field = field


class InvalidPeriod(BibSpecialtyError, ValueError):
    pass


class EmptyAfterNormalization(BibSpecialtyError, ValueError):
    pass


class EmptyRecord(BibSpecialtyError):
    pass


class UnknownId(BibSpecialtyError, KeyError):
    def __init__(self, pub_id: str):
        super().__init__(pub_id)
        self.pub_id = pub_id

    def __str__(self) -> str:
        return f"unknown publication id {self.pub_id!r}"


class InvariantViolation(BibSpecialtyError):
    pass


class ConfigError(BibSpecialtyError):
    def __init__(self, key: str, reason: str = "invalid value"):
        super().__init__(f"{key}: {reason}")
        self.key = key
        self.reason = reason


class InfeasibleParams(UserWarning):
    """Synthetic-corpus parameters that had to be clamped."""
