import math

from hypothesis import settings, strategies as st

settings.register_profile("default", deadline=None, max_examples=200)
settings.load_profile("default")


def disk(radius: float = 2.0):
    """Complex numbers in the closed disk |z| <= radius."""
    return st.builds(
        lambda r, phi: complex(radius * math.sqrt(r) * math.cos(phi), radius * math.sqrt(r) * math.sin(phi)),
        st.floats(0, 1),
        st.floats(0, 2 * math.pi),
    )


def nonzero_disk(radius: float = 2.0, inner: float = 0.05):
    return disk(radius).filter(lambda z: abs(z) >= inner)
