# railfares/errors/taxonomy.py
from typing import Any

from .kinds import ErrorKind

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2

# Operator-facing taxonomy. Keep aligned with ErrorKind.
_TAXONOMY: dict[str, dict[str, Any]] = {
    ErrorKind.SCHEMA.value: {
        "severity": "high",
        "description": "Feed file header does not match its schema exactly.",
        "operator_action": "Regenerate the file with the canonical header.",
    },
    ErrorKind.FIELD.value: {
        "severity": "medium",
        "description": "A value failed its field rule (format, range or enum).",
        "operator_action": "Fix the reported line and column.",
    },
    ErrorKind.DUPLICATE_KEY.value: {
        "severity": "medium",
        "description": "A key that must be unique appears more than once.",
        "operator_action": "Remove or renumber the later occurrence.",
    },
    ErrorKind.REFERENTIAL.value: {
        "severity": "high",
        "description": "A code refers to a station, group, cluster, flow or ticket that does not exist.",
        "operator_action": "Add the missing record or correct the reference.",
    },
    ErrorKind.MISSING_FILE.value: {
        "severity": "high",
        "description": "A canonical feed file is absent from the feed directory.",
        "operator_action": "Check --feed / RAILFARES_FEED_DIR.",
    },
    ErrorKind.IO.value: {
        "severity": "high",
        "description": "A file could not be read or written.",
        "operator_action": "Check permissions and encoding (UTF-8).",
    },
    ErrorKind.AGGREGATE.value: {
        "severity": "high",
        "description": "Several feed errors, reported together.",
        "operator_action": "Work through the listed errors.",
    },
    ErrorKind.UNKNOWN_STATION.value: {
        "severity": "low",
        "description": "Station key is neither a known CRS nor a known NLC.",
        "operator_action": "Check the code against locations.csv.",
    },
    ErrorKind.UNKNOWN_TICKET.value: {
        "severity": "low",
        "description": "Ticket code is not in tickets.csv.",
        "operator_action": "Pick a code listed by `validate --verbose`.",
    },
    ErrorKind.NO_FLOW.value: {
        "severity": "low",
        "description": "No priced flow connects the two stations for this ticket.",
        "operator_action": "Try another ticket type; the pair may be unpriced.",
    },
    ErrorKind.BUDGET_ORDER.value: {
        "severity": "low",
        "description": "Budget list is empty, negative or not strictly ascending.",
        "operator_action": "Pass pence integers in ascending order.",
    },
    ErrorKind.EMPTY_INPUT.value: {
        "severity": "low",
        "description": "Statistics requested over an empty fare sequence.",
        "operator_action": "Check the origin or ticket has priced pairs.",
    },
    ErrorKind.SPEC.value: {
        "severity": "low",
        "description": "Synthetic feed parameters are inconsistent.",
        "operator_action": "Adjust counts to fit the code spaces.",
    },
    ErrorKind.CONFIG.value: {
        "severity": "medium",
        "description": "Configuration file or option is malformed.",
        "operator_action": "Fix the configuration and retry.",
    },
    ErrorKind.NETWORK.value: {
        "severity": "medium",
        "description": "A source could not be fetched or failed its hash check.",
        "operator_action": "Retry later; other entries were still processed.",
    },
    ErrorKind.UNSPECIFIED.value: {
        "severity": "high",
        "description": "Unexpected failure.",
        "operator_action": "Re-run with RAILFARES_LOG_LEVEL=DEBUG and report the run id.",
    },
}


def exit_code_for(kind: ErrorKind) -> int:
    # Every reported failure is a data/validation failure; usage errors never reach here.
    return EXIT_DATA


def get_taxonomy() -> list[dict[str, Any]]:
    return [
        {"kind": kind, "exit_code": exit_code_for(ErrorKind(kind)), **payload}
        for kind, payload in _TAXONOMY.items()
    ]
