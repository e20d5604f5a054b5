"""Run context: the claim currently being checked, for log correlation."""

from __future__ import annotations

import contextvars
from collections.abc import Iterator
from contextlib import contextmanager

current_claim: contextvars.ContextVar[str] = contextvars.ContextVar("current_claim", default="")


def get_claim() -> str:
    """Return the current claim id, or empty string if unset."""
    return current_claim.get()


@contextmanager
def claim_context(claim: str) -> Iterator[None]:
    """Tag log records emitted inside the block with *claim*.

    Worker threads started through :func:`asyncio.to_thread` inherit the
    context, so trial logs carry the claim too.
    """
    token = current_claim.set(claim)
    try:
        yield
    finally:
        current_claim.reset(token)
