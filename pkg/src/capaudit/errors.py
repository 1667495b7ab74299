"""Exception types shared across the toolkit.

``DataError`` covers malformed or inconsistent input files (CSV, WAV, manifests,
pair files). ``BackendError`` covers failures of a remote scoring service and is
kept distinct so callers (and the CLI exit codes) can tell infrastructure
problems apart from data problems.
"""


class DataError(Exception):
    """Input data is malformed, inconsistent, or violates a format contract."""


class BackendError(Exception):
    """A scoring backend is unreachable, timed out, or answered out of protocol."""


class UsageError(Exception):
    """Bad command-line flags or flag combinations."""
