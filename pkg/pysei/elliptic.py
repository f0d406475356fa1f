from __future__ import annotations

import math

from .settings import Settings


class Elliptic:
    """
    Jacobi elliptic functions for real argument, modulus convention
    """

    @staticmethod
    def jacobi_sn_cn_dn(u: float, k: float) -> tuple[float, float, float]:
        """
        Return (sn, cn, dn) of u for the modulus k (parameter m = k^2).

        Descending Landen / AGM: a_0 = 1, b_0 = sqrt(1 - k^2), c_0 = k, run
        to |c_N| < AGM_TOL, set phi_N = 2^N a_N u and recurse
        phi_{n-1} = (phi_n + asin(c_n / a_n * sin(phi_n))) / 2.
        sn = sin(phi_0), cn = cos(phi_0) and dn = sqrt(1 - k^2 sn^2), which is
        positive for every real u when k < 1.

        :param float u: Argument
        :param float k: Modulus, 0 <= k < 1
        :raises ValueError: If k is out of range
        :rtype: tuple
        """
        if not 0.0 <= k < 1.0:
            raise ValueError(f"Modulus must satisfy 0 <= k < 1, not {k}")

        a: list[float] = [1.0]
        c: list[float] = [k]
        b = math.sqrt((1.0 - k) * (1.0 + k))
        n = 0
        while abs(c[n]) >= Settings.AGM_TOL and n < Settings.AGM_MAX_ITERS:
            a.append(0.5 * (a[n] + b))
            c.append(0.5 * (a[n] - b))
            b = math.sqrt(a[n] * b)
            n += 1

        phi = 2.0**n * a[n] * u
        while n > 0:
            phi = 0.5 * (phi + math.asin(c[n] / a[n] * math.sin(phi)))
            n -= 1

        sn = math.sin(phi)
        cn = math.cos(phi)
        dn = math.sqrt(1.0 - k * k * sn * sn)
        return sn, cn, dn
