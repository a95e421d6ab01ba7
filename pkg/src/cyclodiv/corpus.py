"""Fixed corpus of monic polynomials that are NOT products of x and
cyclotomic polynomials. Every entry has a prime p <= 10^4 with f(p) not
dividing f(p^p); the test suite pins which prime is found first.

Entries vanishing at 1 are included on purpose: they pass the necessary
test f(1) = 0 yet still fail somewhere.
"""

NON_FAMILY_CORPUS: tuple[str, ...] = (
    "x + 2",
    "x^2 - 2",
    "x^2 + x + 2",
    "x^3 + x + 1",
    "x + 3",
    "x - 2",
    "x - 3",
    "x + 5",
    "x + 10",
    "x^2 + 2",
    "x^2 - 3",
    "x^2 + 3",
    "x^2 + 4",
    "x^2 + 5",
    "x^2 - 5",
    "x^2 - 6",
    "x^2 + 10",
    "x^2 + x - 1",
    "x^2 - x - 1",
    "x^2 + x + 3",
    "x^2 + x + 4",
    "x^2 + 2x + 2",
    "x^2 - 2x + 2",
    "x^3 - 2",
    "x^3 + 2",
    "x^3 + 3",
    "x^3 - x - 1",
    "x^3 - x + 1",
    "x^3 - 3x - 1",
    "x^3 + x^2 + x + 2",
    "x^4 - 2",
    "x^4 + 2",
    "x^4 - 3",
    "x^4 + x + 1",
    "x^4 - x - 1",
    "x^4 + 2x^2 + 2",
    "x^5 - x - 1",
    "x^5 + 2",
    "x^6 + x + 1",
    "(x - 1)(x - 2)",
    "(x - 1)(x^2 - 2)",
    "(x - 1)(x + 1)(x + 2)",
    "(x - 1)(x^2 + x + 2)",
    "x(x + 2)",
    "x^2(x - 2)",
    "phi(3)(x + 2)",
    "(x + 1)(x^2 + 2)",
    "phi(1)phi(2)phi(3)(x^2 - 3)",
    "(x^2 + 1)^2 + 1",
    "phi(5) + 1",
)
