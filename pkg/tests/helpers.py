"""Shared cached builders so the test modules don't rebuild planes/models."""
import functools

from quadplanes import quadalg, ringplane, vsets

BUILDERS = {
    "matrices": vsets.build_vset_matrices,
    "reduction": vsets.build_vset_reduction,
    "juxtaposition": vsets.build_vset_juxtaposition,
}


@functools.lru_cache(maxsize=None)
def algebra(p, e, kind):
    return quadalg.make_algebra_q(p, e, kind)


@functools.lru_cache(maxsize=None)
def plane(p, e, kind):
    return ringplane.build_plane(algebra(p, e, kind))


@functools.lru_cache(maxsize=None)
def model(p, e, kind, construction="matrices"):
    return BUILDERS[construction](algebra(p, e, kind), plane(p, e, kind))
