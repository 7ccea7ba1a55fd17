# cython: language_level=3, boundscheck=False, wraparound=False
"""GMP-backed sparse polynomial product.

Same contract as ``_pykernels.mul``; keys must fit in 63 bits, otherwise the
call is delegated to the pure-Python kernel.
"""

from fractions import Fraction

from cython.operator cimport dereference as deref
from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector
from cpython.long cimport PyLong_AsLongAndOverflow, PyLong_FromLong

from twoplectic import _pykernels

EXP_BITS = _pykernels.EXP_BITS
IMPLEMENTATION = "cython-gmp"


cdef extern from "gmp.h":
    ctypedef struct __mpz_struct:
        pass
    ctypedef struct __mpq_struct:
        pass
    ctypedef __mpz_struct* mpz_ptr
    ctypedef __mpq_struct* mpq_ptr

    void mpq_init(mpq_ptr)
    void mpq_clear(mpq_ptr)
    void mpq_mul(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_add(mpq_ptr, mpq_ptr, mpq_ptr)
    void mpq_set(mpq_ptr, mpq_ptr)
    int mpq_sgn(mpq_ptr)
    mpz_ptr mpq_numref(mpq_ptr)
    mpz_ptr mpq_denref(mpq_ptr)
    void mpz_set_si(mpz_ptr, long)
    int mpz_set_str(mpz_ptr, const char*, int)
    char* mpz_get_str(char*, int, mpz_ptr)
    int mpz_fits_slong_p(mpz_ptr)
    long mpz_get_si(mpz_ptr)
    size_t mpz_sizeinbase(mpz_ptr, int)


cdef void _set_mpz(mpz_ptr z, object value) except *:
    cdef int overflow = 0
    cdef long small = PyLong_AsLongAndOverflow(value, &overflow)
    if overflow == 0:
        mpz_set_si(z, small)
    else:
        text = format(value, "x").encode("ascii")
        mpz_set_str(z, text, 16)


cdef object _get_int(mpz_ptr z):
    cdef char* buf
    if mpz_fits_slong_p(z):
        return PyLong_FromLong(mpz_get_si(z))
    buf = <char*>malloc(mpz_sizeinbase(z, 16) + 2)
    try:
        mpz_get_str(buf, 16, z)
        return int((<bytes>buf).decode("ascii"), 16)
    finally:
        free(buf)


cdef void _load(dict terms, vector[uint64_t]& keys, __mpq_struct* vals) except *:
    cdef Py_ssize_t i = 0
    for k, v in terms.items():
        keys.push_back(<uint64_t>k)
        _set_mpz(mpq_numref(&vals[i]), v.numerator)
        _set_mpz(mpq_denref(&vals[i]), v.denominator)
        i += 1


def mul(dict a, dict b, int nvars):
    if nvars * EXP_BITS > 63 or not a or not b:
        return _pykernels.mul(a, b, nvars)
    cdef Py_ssize_t na = len(a), nb = len(b), i, j, slot, used = 0
    cdef vector[uint64_t] ka, kb
    cdef __mpq_struct* va = <__mpq_struct*>malloc(na * sizeof(__mpq_struct))
    cdef __mpq_struct* vb = <__mpq_struct*>malloc(nb * sizeof(__mpq_struct))
    cdef __mpq_struct* acc = <__mpq_struct*>malloc(na * nb * sizeof(__mpq_struct))
    cdef __mpq_struct tmp
    cdef vector[uint64_t] out_keys
    cdef unordered_map[uint64_t, Py_ssize_t] index
    cdef unordered_map[uint64_t, Py_ssize_t].iterator it
    cdef uint64_t k
    if va == NULL or vb == NULL or acc == NULL:
        free(va); free(vb); free(acc)
        raise MemoryError()
    ka.reserve(na)
    kb.reserve(nb)
    mpq_init(&tmp)
    for i in range(na):
        mpq_init(&va[i])
    for j in range(nb):
        mpq_init(&vb[j])
    try:
        _load(a, ka, va)
        _load(b, kb, vb)
        index.reserve(na * nb)
        for i in range(na):
            for j in range(nb):
                k = ka[i] + kb[j]
                mpq_mul(&tmp, &va[i], &vb[j])
                it = index.find(k)
                if it == index.end():
                    index[k] = used
                    mpq_init(&acc[used])
                    mpq_set(&acc[used], &tmp)
                    out_keys.push_back(k)
                    used += 1
                else:
                    slot = deref(it).second
                    mpq_add(&acc[slot], &acc[slot], &tmp)
        out = {}
        for slot in range(used):
            if mpq_sgn(&acc[slot]) != 0:
                out[out_keys[slot]] = Fraction(
                    _get_int(mpq_numref(&acc[slot])),
                    _get_int(mpq_denref(&acc[slot])),
                )
        return out
    finally:
        mpq_clear(&tmp)
        for i in range(na):
            mpq_clear(&va[i])
        for i in range(nb):
            mpq_clear(&vb[i])
        for slot in range(used):
            mpq_clear(&acc[slot])
        free(va)
        free(vb)
        free(acc)
