# binsum: exact binomial sums and their 2-adic orders
#
#   F(n, r) = sum_{k=-n..n} C(2n, n-k) * k**(2r)
#
# Library modules live in binsum.libs; the command line is binsum.cli.

__version__ = "0.1.0"
