"""Independent closed-form references used by several test modules."""
import math

import numpy as np


def solid_angle(a, b, c) -> float:
    """Signed solid angle of the geodesic triangle (a, b, c) by the Van Oosterom-Strackee formula."""
    a, b, c = (np.asarray(v, dtype=float) for v in (a, b, c))
    num = float(np.dot(a, np.cross(b, c)))
    den = 1.0 + float(np.dot(a, b) + np.dot(b, c) + np.dot(c, a))
    return 2.0 * math.atan2(num, den)


def lhuilier_area(a, b, c) -> float:
    """Unsigned spherical excess from the three side lengths."""
    def side(p, q):
        return math.acos(max(-1.0, min(1.0, float(np.dot(p, q)))))

    x, y, z = side(b, c), side(c, a), side(a, b)
    s = (x + y + z) / 2
    t = math.tan(s / 2) * math.tan((s - x) / 2) * math.tan((s - y) / 2) * math.tan((s - z) / 2)
    return 4.0 * math.atan(math.sqrt(max(t, 0.0)))


def alpha_along_geodesic(a, b, pole=(0.0, 0.0, -1.0)) -> float:
    """Integral of the primitive along the short geodesic a -> b: solid angle (-pole, a, b) / 4 pi."""
    return solid_angle(-np.asarray(pole, dtype=float), a, b) / (4 * math.pi)
