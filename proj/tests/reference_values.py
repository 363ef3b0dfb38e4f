"""Independent reference values for the unit tests (mpmath, 30 digits)."""
from mpmath import mp, mpc, loggamma, besselk, gamma, pi, sinh, quad, exp, cosh

mp.dps = 30

print("|Gamma(i)|^2", abs(gamma(1j)) ** 2)
for z in [mpc(0.3, 0.7), mpc(-2.5, 1.2), mpc(12, -7), mpc(0, 3), mpc(-7.3, -0.4)]:
    print("loggamma", z, loggamma(z))
print("K_0(1)", besselk(0, 1))
for nu, x in [(1, 1), (0.5, 0.1), (2, 3), (0.3, 0.01), (1, 0.01), (5, 0.5)]:
    print("K_i%g(%g)" % (nu, x), besselk(1j * nu, x).real)
# K_0(1) again by direct quadrature of the cosh integral
print("K_0(1) quad", quad(lambda t: exp(-cosh(t)), [0, 4, 8]))
