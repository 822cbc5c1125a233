from .exceptions import (
    BudgetOrderError,
    ConfigError,
    DuplicateKeyError,
    EmptyInputError,
    FeedError,
    FeedErrors,
    FeedIoError,
    FieldError,
    InputError,
    LookupFailure,
    MissingFileError,
    NetworkError,
    NoFlowError,
    RailFaresError,
    ReferentialError,
    SchemaError,
    SpecError,
    UnknownStationError,
    UnknownTicketError,
    raise_collected,
)
from .kinds import ErrorKind
from .taxonomy import EXIT_DATA, EXIT_OK, EXIT_USAGE, exit_code_for, get_taxonomy

__all__ = [
    "EXIT_DATA",
    "EXIT_OK",
    "EXIT_USAGE",
    "BudgetOrderError",
    "ConfigError",
    "DuplicateKeyError",
    "EmptyInputError",
    "ErrorKind",
    "FeedError",
    "FeedErrors",
    "FeedIoError",
    "FieldError",
    "InputError",
    "LookupFailure",
    "MissingFileError",
    "NetworkError",
    "NoFlowError",
    "RailFaresError",
    "ReferentialError",
    "SchemaError",
    "SpecError",
    "UnknownStationError",
    "UnknownTicketError",
    "exit_code_for",
    "get_taxonomy",
    "raise_collected",
]
