"""Pure-Python polynomial kernels.

Monomials are packed into a single int, ``EXP_BITS`` bits per variable with
variable ``i`` at bit offset ``EXP_BITS * i``; multiplying monomials is then
integer addition of keys.
"""

EXP_BITS = 12
EXP_MASK = (1 << EXP_BITS) - 1

IMPLEMENTATION = "python"


def mul(a, b, nvars):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    bitems = list(b.items())
    for ka, va in a.items():
        for kb, vb in bitems:
            k = ka + kb
            out[k] = get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}
