"""Certified verification of the odd-n Robin-type bound

    sigma(n)/n <= (e^gamma/2) log log n + C / log log n,   n odd, n >= 3,

with C chosen so that equality holds at n = 315.
"""

__version__ = "0.1.0"
