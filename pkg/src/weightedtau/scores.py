"""Score vectors, text ingestion and rank assignments.

A score vector is a one-dimensional ``float64`` array of finite values; the
position of a value is the identity of the item it scores.  A rank assignment
is a ``float64`` array of the same length whose entries are either distinct
naturals ``0, 1, ..., m-1`` or :data:`INFINITE_RANK`.  Rank 0 is the most
important item.
"""

from __future__ import annotations

import math
import re
from os import PathLike

import numpy as np

from . import _kernels
from .errors import DomainError, LengthMismatchError, ParseError

INFINITE_RANK = math.inf

_NUMBER = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?")
_NON_FINITE = re.compile(r"[+-]?(?:nan|inf|infinity)", re.IGNORECASE)


def as_scores(values, name: str = "scores") -> np.ndarray:
    """Validate ``values`` as a score vector and return it as ``float64``."""
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim != 1:
        raise DomainError(f"{name} must be one-dimensional")
    if arr.size == 0:
        raise DomainError(f"{name} is empty")
    if not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} contains NaN or infinite values")
    return arr


def check_lengths(*vectors: np.ndarray) -> int:
    n = len(vectors[0])
    for v in vectors[1:]:
        if len(v) != n:
            raise LengthMismatchError(f"length mismatch: {n} != {len(v)}")
    return n


def _decode(text: str | bytes) -> str:
    if isinstance(text, (bytes, bytearray)):
        try:
            return bytes(text).decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise ParseError(f"input is not valid UTF-8 ({exc.reason})") from None
    return text


def _field(line: str, lineno: int, column: int | None, delimiter: str) -> str:
    if column is None:
        return line.strip()
    fields = line.split(delimiter)
    if column >= len(fields):
        raise ParseError(
            f"expected at least {column + 1} fields, found {len(fields)}", lineno
        )
    return fields[column].strip()


def parse_scores(
    text: str | bytes, column: int | None = None, delimiter: str | None = None
) -> np.ndarray:
    """Parse one score per non-empty line.

    Args:
        text: UTF-8 bytes or an already decoded string.  LF and CRLF line
            endings are accepted; blank lines are skipped.
        column: 0-based field index.  When omitted the whole line is the score.
        delimiter: field separator used with ``column`` (default TAB).

    Raises:
        ParseError: a field is not a decimal or scientific-notation number.
        DomainError: a field is NaN or infinite, or there are no scores.
    """
    text = _decode(text)
    if delimiter is None:
        delimiter = "\t"
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        field = _field(line, lineno, column, delimiter)
        if _NUMBER.fullmatch(field):
            value = float(field)
            if not math.isfinite(value):
                raise DomainError(f"line {lineno}: {field!r} overflows to infinity")
            values.append(value)
        elif _NON_FINITE.fullmatch(field):
            raise DomainError(f"line {lineno}: non-finite score {field!r}")
        else:
            raise ParseError(f"not a number: {field!r}", lineno)
    if not values:
        raise DomainError("no scores found in input")
    return np.array(values, dtype=np.float64)


def read_scores(
    path: str | PathLike, column: int | None = None, delimiter: str | None = None
) -> np.ndarray:
    with open(path, "rb") as fh:
        return parse_scores(fh.read(), column=column, delimiter=delimiter)


def format_score(value: float) -> str:
    """Format a score so that :func:`parse_scores` reads back the same double."""
    return f"{value:.17g}"


def check_ranks(ranks, n: int | None = None) -> np.ndarray:
    """Validate a rank assignment and return it as a ``float64`` array."""
    arr = np.asarray(ranks, dtype=np.float64)
    if arr.ndim != 1:
        raise DomainError("ranks must be one-dimensional")
    if n is not None and len(arr) != n:
        raise LengthMismatchError(f"length mismatch: {n} scores but {len(arr)} ranks")
    finite = arr[np.isfinite(arr)]
    if np.isnan(arr).any() or (arr == -math.inf).any():
        raise DomainError("ranks must be naturals or INFINITE_RANK")
    if finite.size:
        if np.any(finite != np.floor(finite)) or finite.min() < 0:
            raise DomainError("finite ranks must be natural numbers")
        if not np.array_equal(np.sort(finite), np.arange(finite.size)):
            raise DomainError(
                "finite ranks must be distinct and form a prefix 0..m-1"
            )
    return arr


def parse_ranks(text: str | bytes) -> np.ndarray:
    """Parse a ground-truth rank file: a natural number or ``inf`` per line."""
    text = _decode(text)
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        field = line.strip()
        if not field:
            continue
        if field.lower() == "inf":
            values.append(INFINITE_RANK)
        elif field.isdigit():
            values.append(float(int(field)))
        else:
            raise ParseError(f"not a rank: {field!r}", lineno)
    if not values:
        raise DomainError("no ranks found in input")
    return check_ranks(values)


def read_ranks(path: str | PathLike) -> np.ndarray:
    with open(path, "rb") as fh:
        return parse_ranks(fh.read())


def lex_order(primary: np.ndarray, secondary: np.ndarray) -> np.ndarray:
    """Indices sorted by descending ``(primary, secondary)``; joint ties by index."""
    return _kernels.lex_order(
        np.ascontiguousarray(primary, dtype=np.float64),
        np.ascontiguousarray(secondary, dtype=np.float64),
    )


def lex_rank(primary, secondary) -> np.ndarray:
    """Ranks obtained by sorting items lexicographically by descending scores.

    The item with the largest ``primary`` score gets rank 0; ``secondary``
    breaks ties in ``primary``, and items tied in both keep ascending index
    order.

    >>> lex_rank([3, 1, 2], [0, 0, 0]).tolist()
    [0.0, 2.0, 1.0]
    """
    primary = as_scores(primary, "primary")
    secondary = as_scores(secondary, "secondary")
    n = check_lengths(primary, secondary)
    ranks = np.empty(n, dtype=np.float64)
    ranks[lex_order(primary, secondary)] = np.arange(n, dtype=np.float64)
    return ranks


def truncate_ranks(ranks, k: int) -> np.ndarray:
    """Keep ranks below ``k`` and send all others to :data:`INFINITE_RANK`."""
    if k < 0:
        raise DomainError("k must be a natural number")
    arr = np.asarray(ranks, dtype=np.float64)
    return np.where(arr < k, arr, INFINITE_RANK)
