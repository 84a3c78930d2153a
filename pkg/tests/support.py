import functools

from charprod.zoo import from_label


@functools.lru_cache(maxsize=None)
def zoo(label: str):
    """Groups are immutable, so tests share one instance (and its cached tables) per label."""
    return from_label(label)
