"""Random rings, classes and bundles shared by the test modules."""
import random

from hypothesis import strategies as st

from fswcalc import (BundleClass, KahlerFamilyData, point_ring, projective_space, surface_ring,
                     truncated_polynomial_ring)


def random_surface(rng: random.Random, rank=None):
    r = rank or rng.randint(1, 3)
    q = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i, r):
            q[i][j] = q[j][i] = rng.randint(-2, 2)
    return surface_ring(q)


def random_ring(rng: random.Random, kinds=("point", "cp1", "cp2", "cp3", "surface")):
    kind = rng.choice(kinds)
    if kind == "point":
        return point_ring()
    if kind == "surface":
        return random_surface(rng)
    return projective_space(int(kind[2:]))


def random_class(rng: random.Random, ring, degree, lo=-3, hi=3):
    out = ring.zero
    for b in ring.basis(degree):
        out = out + rng.randint(lo, hi) * b
    return out


def random_bundle(rng: random.Random, ring, rank, lo=-3, hi=3):
    pieces = [ring.one] + [random_class(rng, ring, 2 * i, lo, hi)
                           for i in range(1, min(rank, ring.top) + 1)]
    return BundleClass(ring, rank, pieces)


def random_kahler(rng: random.Random, ring=None, h0=None):
    ring = ring or random_ring(rng)
    h0 = rng.randint(0, 6) if h0 is None else h0
    h1, h2, rho = rng.randint(0, 4), rng.randint(0, 4), rng.randint(0, 3)
    return KahlerFamilyData(ring, h0, h1, h2, rho, random_bundle(rng, ring, h0),
                            random_bundle(rng, ring, h1), random_bundle(rng, ring, h2),
                            random_bundle(rng, ring, rho))


def root_ring(nvars, top):
    """Free truncated ring on formal roots ``x1..xN`` of degree 2, cut above degree ``2*top``."""
    return truncated_polynomial_ring([(f"x{i + 1}", 2) for i in range(nvars)], 2 * top)


# -- hypothesis strategies -------------------------------------------------------

@st.composite
def rings(draw, kinds=("point", "cp1", "cp2", "cp3", "surface", "bigraded")):
    kind = draw(st.sampled_from(kinds))
    if kind == "point":
        return point_ring()
    if kind == "surface":
        r = draw(st.integers(1, 3))
        q = [[0] * r for _ in range(r)]
        for i in range(r):
            for j in range(i, r):
                q[i][j] = q[j][i] = draw(st.integers(-2, 2))
        return surface_ring(q)
    if kind == "bigraded":
        # two generators of degrees 2 and 4, like a product of projective spaces
        return truncated_polynomial_ring([("a", 2), ("b", 4)], 8, (3, 2))
    return projective_space(int(kind[2:]))


@st.composite
def classes(draw, ring, degree=None, bound=4):
    degrees = [degree] if degree is not None else range(0, ring.truncation_degree + 1, 2)
    out = ring.zero
    for d in degrees:
        for b in ring.basis(d):
            out = out + draw(st.integers(-bound, bound)) * b
    return out


@st.composite
def bundles(draw, ring, rank, bound=3):
    pieces = [ring.one] + [draw(classes(ring, 2 * i, bound)) for i in range(1, min(rank, ring.top) + 1)]
    return BundleClass(ring, rank, pieces)


@st.composite
def kahler_data(draw, ring_kinds=("point", "cp1", "cp2", "cp3", "surface", "bigraded")):
    ring = draw(rings(ring_kinds))
    h0 = draw(st.integers(0, 6))
    h1 = draw(st.integers(0, 4))
    h2 = draw(st.integers(0, 4))
    rho = draw(st.integers(0, 3))
    return KahlerFamilyData(ring, h0, h1, h2, rho, draw(bundles(ring, h0)), draw(bundles(ring, h1)),
                            draw(bundles(ring, h2)), draw(bundles(ring, rho)))


def random_blowup(rng: random.Random, mode=None, max_tries=50):
    """A random ``BlowupSpec`` whose bundle data is realisable (retries otherwise)."""
    from fswcalc import BlowupMode, BlowupSpec, blowup_bundle_data

    for _ in range(max_tries):
        R = random_surface(rng)
        m = mode or rng.choice(list(BlowupMode))
        k = {BlowupMode.MINUS_KE_SURJECTIVE: rng.randint(1, 3),
             BlowupMode.PLUS_KE_SURJECTIVE: rng.randint(2, 4)}.get(m)
        cot = random_bundle(rng, R, 2)
        L2 = random_bundle(rng, R, 1, -1, 1)
        spec = BlowupSpec(R, random_class(rng, R, 2), L2, rng.randint(0, 8), rng.randint(0, 4),
                          rng.randint(0, 4), rng.randint(0, 3), m, k, cotangent=cot)
        try:
            blowup_bundle_data(spec)
        except ValueError:
            continue
        return spec
    raise RuntimeError("could not draw a realisable blowup spec")
