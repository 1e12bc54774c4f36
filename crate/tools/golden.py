"""Extended-precision reference values for the golden-fixture tests.

Runs with mpmath only and shares no code with the Rust crates.  The
output is pasted into crates/core/tests/golden.rs.
"""
from mpmath import (mp, mpf, besseli, besselk, gamma, loggamma, cosh, sinh, cos, sqrt,
                    pi, exp, quad, inf, hyp1f1, hyp2f2, re, nstr, log)

mp.dps = 60
DIGITS = 50


def psi(tau, x):
    return sqrt(pi) * exp(-x / 2) * re(besseli(1j * tau, x / 2)) / cosh(pi * tau)


def show(name, v):
    print(f"{name} = {nstr(v, DIGITS)}")


# K_{i}(1) from the cosh integral
v1 = quad(lambda t: exp(-cosh(t)) * cos(t), [0, 1, 2, 3, 4, 6])
show("K_i(1) cosh-integral", v1)
show("K_i(1) via besselk", re(besselk(1j, 1)))
show("K_0(1)", quad(lambda t: exp(-cosh(t)), [0, 1, 2, 3, 4, 6]))

# 2F2(1, 1/2; 1+i, 1-i; 1) by direct summation
def sum_2f2_invf(tau, x):
    s, term, k = mpf(0), mpf(1), 0
    while abs(term) > mpf(10) ** (-70):
        s += term
        term = term * (mpf(1) / 2 + k) * x / ((k + 1) ** 2 + tau ** 2)
        k += 1
    return s
show("2F2(1,1/2;1+i,1-i;1)", sum_2f2_invf(1, 1))
show("2F2(1,1/2;1+i,1-i;1) via hyp2f2", re(hyp2f2(1, 0.5, 1 + 1j, 1 - 1j, 1)))

# 2F2(1, 3/2; 2, 2; 1)
def sum_2f2_invg(xi, eps, t):
    s, term, k = mpf(0), mpf(1), 0
    while abs(term) > mpf(10) ** (-70):
        s += term
        b = 2 - eps + k
        term = term * (mpf(3) / 2 - eps + k) * t / (b * b + xi * xi)
        k += 1
    return s
show("2F2(1,3/2;2,2;1)", sum_2f2_invg(0, 0, 1))
show("2F2(1,3/2;2,2;1) via hyp2f2", re(hyp2f2(1, 1.5, 2, 2, 1)))
show("2F2 invF tau=0 x=2", sum_2f2_invf(0, 2))
show("e I0(1)", exp(1) * besseli(0, 1))
show("2F2 invG x=1 eps=0.1 t=2", sum_2f2_invg(1, mpf(1) / 10, 2))
show("2F2 invG x=1 eps=0.1 t=2 check", re(hyp2f2(1, 1.4, 1.9 - 1j, 1.9 + 1j, 2)))

# int_0^inf e^{-x/2} I_0(x/2) x^{-3/4} dx (Mellin pair at s = 1/4)
v4 = quad(lambda x: exp(-x / 2) * besseli(0, x / 2) * x ** (-mpf(3) / 4), [0, 1, 10, 100, inf])
show("I0 x^(-3/4) integral, quad", v4)
show("I0 x^(-3/4) integral, closed", gamma(0.25) ** 2 / (sqrt(pi) * gamma(0.75)))

# psi(1, 2) by the 60-digit series
show("psi(1,2)", psi(1, 2))

# forward F of 1/(1+x)^2 at tau = 1, via Parseval/Mellin-Barnes (independent route)
def f_mb(tau, fstar, g=mpf(1) / 4):
    def h(u):
        s = g + 1j * u
        return gamma(s + 1j * tau) * gamma(s - 1j * tau) * gamma(0.5 - s) / (gamma(s) * gamma(1 - s)) * fstar(1 - s)
    return re(quad(h, [-inf, -10, -3, 0, 3, 10, inf])) / (2 * pi)
show("F f1 tau=1", f_mb(1, lambda s: gamma(s) * gamma(2 - s)))

# apply G of tau^2 e^{-tau^2} at x = 1
show("G g1 x=1", 2 * quad(lambda t: psi(t, 1) * t * t * exp(-t * t), [0, 1, 2, 4, 8, 12]))

# Extra fixtures
show("I_0(1)", besseli(0, 1))
show("1F1(1;3/2;-1)", hyp1f1(1, 1.5, -1))
show("|Gamma(1+i)|^2", abs(gamma(1 + 1j)) ** 2)
show("log 9!", loggamma(10))
show("psi(0.5,1)", psi(0.5, 1))
show("psi(0,4)", psi(0, 4))
show("psi(0,0.1)", psi(0, mpf(1) / 10))
show("psi(5,10)", psi(5, 10))
show("I_{1.5i}(2) re", re(besseli(1.5j, 2)))
show("I_{1.5i}(2) im", besseli(1.5j, 2).imag)
show("G g2 x=2", 2 * quad(lambda t: psi(t, 2) * t * t / cosh(t), [0, 1, 2, 4, 8, 16]))
show("F f2 tau=1", f_mb(1, lambda s: gamma(s + 1) * gamma(2 - s) / 2))
show("1F1(1/2+i;1+2i;1) re", re(hyp1f1(0.5 + 1j, 1 + 2j, 1)))
show("1F1(1/2+i;1+2i;1) im", hyp1f1(0.5 + 1j, 1 + 2j, 1).imag)
show("K_2i(4)", re(besselk(2j, 4)))
show("K_0.5i(0.25)", re(besselk(0.5j, 0.25)))
show("laplace x=1 tau=1", quad(lambda y: exp(-y) * re(besselk(1j, sqrt(y))) ** 2, [0, 1, 10, inf]))
show("laplace x=2 tau=0.5", quad(lambda y: exp(-2 * y) * re(besselk(0.5j, sqrt(y))) ** 2, [0, 1, 10, inf]))
