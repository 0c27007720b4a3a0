"""Small parsing and formatting helpers shared by the CLI, repositories and services."""

import re
from typing import Iterable, List, Sequence, Tuple

EMPTY_LEVI = "empty"

_FIELD_SPEC = re.compile(r"^\s*(\d+)\s*(?:\^\s*(\d+))?\s*$")


def format_levi(labels: Iterable[str], order: Sequence[str]) -> str:
    """Serialize a subset of simple roots as `alpha+beta` (preset order) or `empty`."""
    chosen = set(labels)
    ordered = [label for label in order if label in chosen]
    return "+".join(ordered) if ordered else EMPTY_LEVI


def parse_levi(text: str, order: Sequence[str]) -> Tuple[str, ...]:
    """
    Parse a Levi label back into a tuple of simple-root labels in preset order.

    Accepts `empty`, `-`, the empty string, `+`-joined or comma-joined labels.

    Raises:
        ValueError: a label is not a simple root of the preset
    """
    text = text.strip()
    if text in ("", "-", EMPTY_LEVI, "{}"):
        return ()
    parts = [part.strip() for part in re.split(r"[+,]", text.strip("{}")) if part.strip()]
    unknown = [part for part in parts if part not in order]
    if unknown:
        raise ValueError(f"Unknown simple roots {unknown}; expected a subset of {list(order)}")
    return tuple(label for label in order if label in parts)


def parse_field_spec(text: str) -> Tuple[int, int]:
    """
    Parse `p^k`, `p` or a prime power `q` into (p, k).

    Raises:
        ValueError: malformed spec or q not a prime power
    """
    match = _FIELD_SPEC.match(text)
    if not match:
        raise ValueError(f"Malformed field spec '{text}'; expected p^k")
    base = int(match.group(1))
    if match.group(2) is not None:
        if not is_prime(base):
            raise ValueError(f"Field characteristic {base} is not prime")
        return base, int(match.group(2))
    for p in range(2, base + 1):
        if base % p == 0:
            k = 0
            rest = base
            while rest % p == 0:
                rest //= p
                k += 1
            if rest != 1:
                raise ValueError(f"{base} is not a prime power")
            return p, k
    raise ValueError(f"{base} is not a prime power")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]
