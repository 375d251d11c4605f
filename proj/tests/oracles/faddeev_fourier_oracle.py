"""Direct evaluation of the Faddeev kernel g_k(x) from its Fourier integral.

g_k(x) = (2 pi)^-2 \int e^{i x.xi} / (|xi|^2 + 2 k (xi_1 + i xi_2)) dxi

Polar coordinates in xi; the radial integral is rotated onto the imaginary
axis (picking up the residue of the pole at r = -a when it lies in the swept
quadrant) and evaluated by adaptive quadrature; the angular integral is
split at its singular points. Used only to freeze expected values for the
C++ tests; it never calls an exponential-integral routine.
"""
import cmath
import math

from scipy import integrate


def cquad(f, a, b, **kw):
    re = integrate.quad(lambda y: f(y).real, a, b, limit=400, epsabs=1e-13, epsrel=1e-12, **kw)[0]
    im = integrate.quad(lambda y: f(y).imag, a, b, limit=400, epsabs=1e-13, epsrel=1e-12, **kw)[0]
    return complex(re, im)


def radial(c, a):
    # \int_0^inf e^{i c r} / (r + a) dr
    p = -a
    if c > 0:
        val = cquad(lambda y: math.exp(-c * y) * 1j / (1j * y + a), 0, math.inf)
        if p.real > 0 and p.imag > 0:
            val += 2j * math.pi * cmath.exp(1j * c * p)
        return val
    val = cquad(lambda y: math.exp(c * y) * (-1j) / (-1j * y + a), 0, math.inf)
    if p.real > 0 and p.imag < 0:
        val -= 2j * math.pi * cmath.exp(1j * c * p)
    return val


def g_fourier(k, x):
    # |xi|^2 + 2 k xi = r (r + 2 k e^{i theta}) in polar coordinates; no
    # rescaling of xi, so g_k(x) = g_1(kx) is an observable of this oracle.
    k = complex(k)
    x1, x2 = complex(x).real, complex(x).imag
    phi = math.atan2(x2, x1)
    f = lambda t: radial(x1 * math.cos(t) + x2 * math.sin(t), 2 * k * cmath.exp(1j * t))
    pole = (math.pi - cmath.phase(k)) % (2 * math.pi)
    pts = sorted({(phi + math.pi / 2) % (2 * math.pi), (phi - math.pi / 2) % (2 * math.pi), pole})
    edges = [0.0] + [p for p in pts if 1e-12 < p < 2 * math.pi - 1e-12] + [2 * math.pi]
    total = 0j
    for lo, hi in zip(edges[:-1], edges[1:]):
        total += cquad(f, lo, hi)
    return total / (2 * math.pi) ** 2


if __name__ == "__main__":
    cases = [(1, 0.3 + 0.2j), (1, -0.7 + 0.4j), (1, 1.5 - 0.5j), (1, 0.05 + 0.0j),
             (2 + 1j, 0.3 + 0.2j), (1, (2 + 1j) * (0.3 + 0.2j)), (0.5j, 0.9 + 0.1j)]
    for k, x in cases:
        v = g_fourier(k, x)
        print(f"{{cplx({complex(k).real}, {complex(k).imag}), cplx({complex(x).real}, {complex(x).imag}), cplx({v.real:.15e}, {v.imag:.15e})}},")
