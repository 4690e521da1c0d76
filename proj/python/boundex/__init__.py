"""Boundary value exploration: NCD, program derivatives and boundary search.

    >>> import boundex
    >>> boundex.date_construct(2020, 0, 31)
    ('error', 'Month: 0 out of range (1:12)')
    >>> boundex.detect(sut="step100")["pair"]
    [[99], [100]]
"""

import json

from ._boundex import (
    Service,
    compressed_size,
    date_construct,
    edit_distance,
    ncd,
    total_days,
)

__all__ = [
    "BoundexError",
    "Service",
    "compressed_size",
    "date_construct",
    "detect",
    "edit_distance",
    "grid",
    "ncd",
    "refine",
    "request",
    "scan",
    "suts",
    "total_days",
]

_default = None


class BoundexError(RuntimeError):
    def __init__(self, status, exit_code, error):
        super().__init__(f"{error.get('code')}: {error.get('message')}")
        self.status = status
        self.exit_code = exit_code
        self.error = error


def _service():
    global _default
    if _default is None:
        _default = Service()
    return _default


def request(operation, payload, service=None):
    """Runs one request; returns (exit_code, body). Raises BoundexError."""
    status, exit_code, body, content_type = (service or _service()).dispatch(
        operation, json.dumps(payload))
    text = body.decode()
    if status != 200:
        raise BoundexError(status, exit_code, json.loads(text)["error"])
    if content_type != "application/json":
        return exit_code, text
    return exit_code, json.loads(text)


def suts():
    return json.loads(_service().suts()[2])


def detect(**fields):
    return request("detect", {"v": 1, **fields})[1]


def scan(**fields):
    return request("scan", {"v": 1, **fields})[1]


def grid(**fields):
    return request("grid", {"v": 1, **fields})[1]


def refine(**fields):
    return request("refine", {"v": 1, **fields})[1]
