"""Smoke test for the fraclat extension module.

Build and install first, e.g. `pip install maturin && maturin develop -m crates/python/Cargo.toml`.
"""

import math

import fraclat


def close(a, b, tol):
    assert abs(a - b) <= tol, (a, b)


order = fraclat.FractionalOrder(2.0)
assert order.is_integer_half
assert [order.element(p) for p in range(4)] == [2.0, -1.0, 0.0, 0.0]

for alpha in (0.5, 1.5, 2.7):
    for p in range(6):
        close(fraclat.element_infinite_closed(alpha, p), fraclat.element_infinite_quadrature(alpha, p), 1e-10)
    for p in range(16):
        close(fraclat.element_periodic_bloch(alpha, 16, p), fraclat.element_periodic_images(alpha, 16, p), 1e-9)

m = fraclat.CirculantMatrix(1.3, 8, mu=2.0)
assert len(m) == 8
assert max(m.eigenvalues()) <= 1e-10
close(m.row_sum(), 0.0, 1e-12)
close(m.get(2, 5), m.first_row[3], 0.0)

bz = fraclat.element_infinite_nd_bz(1.5, [2, 1])
close(bz, fraclat.element_infinite_nd_bessel(1.5, [2, 1]), 1e-8)
close(bz, fraclat.element_periodic_nd(1.5, [512, 512], [2, 1]), 1e-6)
close(fraclat.asymptotic_constant_nd(1, 1.0), 1 / math.pi, 1e-15)
close(fraclat.normalized_frequency_2d(3.0, math.pi / 3, 0.0), 2 ** -1.5, 1e-15)

close(fraclat.riesz_kernel_infinite(1.0, 1.0), 1 / math.pi, 1e-14)
assert fraclat.riesz_kernel_periodic(0.5, 10.0, 3.0) > fraclat.riesz_kernel_infinite(0.5, 3.0)
rows = fraclat.continuum_convergence(0.5, 1.0, [0.1, 0.025])
assert rows[1][4] < rows[0][4]

close(fraclat.hurwitz_zeta(2.0, 1.0), math.pi ** 2 / 6, 1e-12)
close(fraclat.log_gamma(5.0), math.log(24.0), 1e-14)
close(fraclat.bessel_j(0, 0.0), 1.0, 0.0)

for bad in (lambda: fraclat.FractionalOrder(-1.0),
            lambda: fraclat.element_infinite_nd_bessel(2.0, [1, 0]),
            lambda: fraclat.riesz_kernel_infinite(0.5, 0.0)):
    try:
        bad()
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")

checks = fraclat.verify("asymptotics")
assert checks and all(c[4] for c in checks), checks

print("smoke test passed")
