"""Error taxonomy shared by the library and the CLI exit codes."""

from __future__ import annotations


class InputError(Exception):
    """Malformed or invalid input data (CLI exit code 2)."""


class PreconditionError(Exception):
    """A mathematical hypothesis the input must satisfy fails (exit code 3).

    `code` is a stable machine-readable identifier, `detail` is for humans.
    """

    def __init__(self, code: str, detail: str):
        super().__init__(f"{code}: {detail}")
        self.code = code
        self.detail = detail
