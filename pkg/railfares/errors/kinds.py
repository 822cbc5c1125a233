# railfares/errors/kinds.py
from enum import Enum


class ErrorKind(str, Enum):
    # Feed files
    SCHEMA = "schema"
    FIELD = "field"
    DUPLICATE_KEY = "duplicate_key"
    REFERENTIAL = "referential"
    MISSING_FILE = "missing_file"
    IO = "io"
    AGGREGATE = "aggregate"

    # Queries
    UNKNOWN_STATION = "unknown_station"
    UNKNOWN_TICKET = "unknown_ticket"
    NO_FLOW = "no_flow"

    # Caller input
    BUDGET_ORDER = "budget_order"
    EMPTY_INPUT = "empty_input"
    SPEC = "spec"
    CONFIG = "config"

    # Downloads
    NETWORK = "network"

    # Catch-all
    UNSPECIFIED = "unspecified"
