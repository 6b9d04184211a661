import functools

from charsum import build_field, partition


@functools.lru_cache(maxsize=None)
def get_field(p, m=1):
    return build_field(p, m)


@functools.lru_cache(maxsize=None)
def get_partition(p, m, n, conjugate=False):
    return partition(get_field(p, m), n, conjugate=conjugate)
