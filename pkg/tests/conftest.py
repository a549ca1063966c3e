import random

from meshcoord.instances import random_coverage_instance


def coverage_instance(seed, **kwargs):
    """Seeded random grid-coverage objective + communication graph."""
    return random_coverage_instance(random.Random(seed), **kwargs)
