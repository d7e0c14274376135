/* Optional GMP-backed accelerator for modular polynomial exponentiation
 * over F_p.  The Python layer falls back to a pure-Python implementation
 * when this module is unavailable, so the package works without it.
 *
 * Exposes a single function:
 *
 *     powmod(mod_coeffs, base_coeffs, e) -> list[int]
 *
 * where mod_coeffs is the ascending coefficient list of a monic modulus of
 * degree >= 1 over F_p with the prime appended as the last argument:
 *
 *     powmod(mod_coeffs, base_coeffs, e, p) -> list[int]
 *
 * All coefficients must already be reduced into [0, p).  The result is the
 * ascending coefficient list of base^e mod (m, p), trimmed of leading
 * zeros.
 */

#define PY_SSIZE_T_CLEAN
#include <Python.h>
#include <gmp.h>
#include <stdlib.h>
#include <string.h>

/* ---- PyLong <-> mpz conversion via hex strings (portable C API) ---- */

static int
pylong_to_mpz(PyObject *obj, mpz_t out)
{
    PyObject *hex;
    const char *s;

    hex = PyNumber_ToBase(obj, 16);
    if (hex == NULL)
        return -1;
    s = PyUnicode_AsUTF8(hex);
    if (s == NULL) {
        Py_DECREF(hex);
        return -1;
    }
    /* format is [-]0x<digits> */
    if (s[0] == '-') {
        if (mpz_set_str(out, s + 3, 16) == 0)
            mpz_neg(out, out);
        else {
            Py_DECREF(hex);
            PyErr_SetString(PyExc_ValueError, "bad integer literal");
            return -1;
        }
    }
    else if (mpz_set_str(out, s + 2, 16) != 0) {
        Py_DECREF(hex);
        PyErr_SetString(PyExc_ValueError, "bad integer literal");
        return -1;
    }
    Py_DECREF(hex);
    return 0;
}

static PyObject *
mpz_to_pylong(const mpz_t z)
{
    char *s = mpz_get_str(NULL, 16, z);
    PyObject *out;

    if (s == NULL)
        return PyErr_NoMemory();
    out = PyLong_FromString(s, NULL, 16);
    free(s);
    return out;
}

static mpz_t *
mpz_array_new(Py_ssize_t count)
{
    Py_ssize_t i;
    mpz_t *arr = malloc(sizeof(mpz_t) * (size_t)count);

    if (arr == NULL)
        return NULL;
    for (i = 0; i < count; i++)
        mpz_init(arr[i]);
    return arr;
}

static void
mpz_array_free(mpz_t *arr, Py_ssize_t count)
{
    Py_ssize_t i;

    if (arr == NULL)
        return;
    for (i = 0; i < count; i++)
        mpz_clear(arr[i]);
    free(arr);
}

static mpz_t *
coeff_list_to_mpz(PyObject *list, Py_ssize_t *len_out)
{
    Py_ssize_t i, len;
    mpz_t *arr;

    if (!PyList_Check(list) && !PyTuple_Check(list)) {
        PyErr_SetString(PyExc_TypeError, "coefficients must be a list or tuple");
        return NULL;
    }
    len = PySequence_Fast_GET_SIZE(list);
    *len_out = len;
    if (len == 0)
        return (mpz_t *)1; /* sentinel: empty (zero polynomial) */
    arr = mpz_array_new(len);
    if (arr == NULL) {
        PyErr_NoMemory();
        return NULL;
    }
    for (i = 0; i < len; i++) {
        PyObject *item = PySequence_Fast_GET_ITEM(list, i);
        PyObject *asint = PyNumber_Index(item);
        if (asint == NULL || pylong_to_mpz(asint, arr[i]) < 0) {
            Py_XDECREF(asint);
            mpz_array_free(arr, len);
            return NULL;
        }
        Py_DECREF(asint);
    }
    return arr;
}

/* ---- core arithmetic: arrays of length n represent residues mod m ---- */

typedef struct {
    Py_ssize_t n;   /* degree of the monic modulus */
    mpz_t *m;       /* coefficients m[0..n-1]; leading 1 implicit */
    mpz_t p;        /* field characteristic */
    mpz_t *prod;    /* scratch, 2n-1 coefficients */
    mpz_t t;        /* scratch */
} modctx;

/* Reduce the scratch product (degree <= 2n-2, coefficients of any size)
 * into res[0..n-1] with coefficients in [0, p). */
static void
reduce_product(modctx *c, mpz_t *res)
{
    Py_ssize_t i, j, n = c->n;

    for (i = 2 * n - 2; i >= n; i--) {
        mpz_fdiv_r(c->t, c->prod[i], c->p);
        if (mpz_sgn(c->t) != 0)
            for (j = 0; j < n; j++)
                mpz_submul(c->prod[i - n + j], c->m[j], c->t);
    }
    for (j = 0; j < n; j++)
        mpz_fdiv_r(res[j], c->prod[j], c->p);
}

static void
sqr_mod(modctx *c, mpz_t *a, mpz_t *res)
{
    Py_ssize_t i, j, n = c->n;

    for (i = 0; i < 2 * n - 1; i++)
        mpz_set_ui(c->prod[i], 0);
    for (i = 0; i < n; i++) {
        if (mpz_sgn(a[i]) == 0)
            continue;
        mpz_addmul(c->prod[2 * i], a[i], a[i]);
        for (j = i + 1; j < n; j++) {
            if (mpz_sgn(a[j]) == 0)
                continue;
            mpz_mul(c->t, a[i], a[j]);
            mpz_mul_2exp(c->t, c->t, 1);
            mpz_add(c->prod[i + j], c->prod[i + j], c->t);
        }
    }
    reduce_product(c, res);
}

static void
mul_mod(modctx *c, mpz_t *a, mpz_t *b, mpz_t *res)
{
    Py_ssize_t i, j, n = c->n;

    for (i = 0; i < 2 * n - 1; i++)
        mpz_set_ui(c->prod[i], 0);
    for (i = 0; i < n; i++) {
        if (mpz_sgn(a[i]) == 0)
            continue;
        for (j = 0; j < n; j++)
            if (mpz_sgn(b[j]) != 0)
                mpz_addmul(c->prod[i + j], a[i], b[j]);
    }
    reduce_product(c, res);
}

/* res = a * x mod m (single reduction step) */
static void
shift_mod(modctx *c, mpz_t *a, mpz_t *res)
{
    Py_ssize_t j, n = c->n;

    mpz_set(c->t, a[n - 1]); /* coefficient pushed past the top */
    for (j = n - 1; j >= 1; j--)
        mpz_set(res[j], a[j - 1]);
    mpz_set_ui(res[0], 0);
    if (mpz_sgn(c->t) != 0) {
        for (j = 0; j < n; j++) {
            mpz_submul(res[j], c->m[j], c->t);
            mpz_fdiv_r(res[j], res[j], c->p);
        }
    }
}

static PyObject *
fast_powmod(PyObject *self, PyObject *args)
{
    PyObject *mod_list, *base_list, *e_obj, *p_obj, *out = NULL;
    mpz_t *m = NULL, *base = NULL, *acc = NULL, *tmp = NULL, **table = NULL;
    Py_ssize_t m_len = 0, b_len = 0, n, i, j, top;
    modctx c;
    mpz_t e;
    int base_is_x, started;
    size_t bits, table_size = 0;

    if (!PyArg_ParseTuple(args, "OOOO", &mod_list, &base_list, &e_obj, &p_obj))
        return NULL;

    mpz_init(e);
    mpz_init(c.p);
    mpz_init(c.t);
    c.m = NULL;
    c.prod = NULL;

    if (pylong_to_mpz(e_obj, e) < 0 || pylong_to_mpz(p_obj, c.p) < 0)
        goto done;
    if (mpz_sgn(e) < 0) {
        PyErr_SetString(PyExc_ValueError, "negative exponent");
        goto done;
    }
    if (mpz_cmp_ui(c.p, 2) < 0) {
        PyErr_SetString(PyExc_ValueError, "p must be >= 2");
        goto done;
    }

    m = coeff_list_to_mpz(mod_list, &m_len);
    if (m == NULL)
        goto done;
    if (m_len < 2 || m == (mpz_t *)1) {
        if (m == (mpz_t *)1)
            m = NULL;
        PyErr_SetString(PyExc_ValueError, "modulus must have degree >= 1");
        goto done;
    }
    if (mpz_cmp_ui(m[m_len - 1], 1) != 0) {
        PyErr_SetString(PyExc_ValueError, "modulus must be monic");
        goto done;
    }
    n = m_len - 1;
    c.n = n;
    c.m = m; /* m[0..n-1] used; leading 1 ignored */

    base = coeff_list_to_mpz(base_list, &b_len);
    if (base == NULL)
        goto done;
    if (base == (mpz_t *)1) {
        base = NULL;
        b_len = 0;
    }
    if (b_len > m_len) {
        PyErr_SetString(PyExc_ValueError, "base degree must be below modulus degree");
        goto done;
    }

    c.prod = mpz_array_new(2 * n - 1 > 0 ? 2 * n - 1 : 1);
    acc = mpz_array_new(n);
    tmp = mpz_array_new(n);
    if (c.prod == NULL || acc == NULL || tmp == NULL) {
        PyErr_NoMemory();
        goto done;
    }

    /* base of length m_len means degree n: reduce once via the shift trick
     * is not applicable; require callers to pre-reduce instead. */
    if (b_len == m_len) {
        PyErr_SetString(PyExc_ValueError, "base must be reduced mod the modulus");
        goto done;
    }

    /* zero base: 0^0 = 1, else 0 */
    if (b_len == 0) {
        out = PyList_New(0);
        if (out != NULL && mpz_sgn(e) == 0) {
            PyObject *one = PyLong_FromLong(1);
            if (one == NULL || PyList_Append(out, one) < 0) {
                Py_XDECREF(one);
                Py_CLEAR(out);
            }
            else
                Py_DECREF(one);
        }
        goto done;
    }

    base_is_x = (b_len == 2 && n >= 2 && mpz_sgn(base[0]) == 0 &&
                 mpz_cmp_ui(base[1], 1) == 0);
    bits = mpz_sizeinbase(e, 2);

    if (mpz_sgn(e) == 0) {
        for (j = 0; j < n; j++)
            mpz_set_ui(acc[j], 0);
        mpz_set_ui(acc[0], 1);
    }
    else if (base_is_x) {
        /* left-to-right binary; multiply-by-x is a cheap shift */
        for (j = 0; j < n; j++)
            mpz_set_ui(acc[j], 0);
        started = 0;
        for (i = (Py_ssize_t)bits - 1; i >= 0; i--) {
            if (started) {
                sqr_mod(&c, acc, tmp);
                if (mpz_tstbit(e, (mp_bitcnt_t)i))
                    shift_mod(&c, tmp, acc);
                else
                    for (j = 0; j < n; j++)
                        mpz_set(acc[j], tmp[j]);
            }
            else {
                /* leading bit: acc = x */
                mpz_set_ui(acc[1], 1);
                started = 1;
            }
        }
    }
    else {
        /* 4-bit fixed window */
        table_size = 16;
        table = malloc(sizeof(mpz_t *) * table_size);
        if (table == NULL) {
            PyErr_NoMemory();
            goto done;
        }
        memset(table, 0, sizeof(mpz_t *) * table_size);
        for (i = 0; i < (Py_ssize_t)table_size; i++) {
            table[i] = mpz_array_new(n);
            if (table[i] == NULL) {
                PyErr_NoMemory();
                goto done;
            }
        }
        mpz_set_ui(table[0][0], 1);
        for (j = 0; j < b_len; j++)
            mpz_set(table[1][j], base[j]);
        for (i = 2; i < (Py_ssize_t)table_size; i++)
            mul_mod(&c, table[i - 1], table[1], table[i]);

        top = ((Py_ssize_t)bits + 3) / 4 - 1;
        {
            unsigned long d = 0;
            for (j = 3; j >= 0; j--) {
                d <<= 1;
                if (mpz_tstbit(e, (mp_bitcnt_t)(top * 4 + j)))
                    d |= 1;
            }
            for (j = 0; j < n; j++)
                mpz_set(acc[j], table[d][j]);
        }
        for (i = top - 1; i >= 0; i--) {
            unsigned long d = 0;
            sqr_mod(&c, acc, tmp);
            sqr_mod(&c, tmp, acc);
            sqr_mod(&c, acc, tmp);
            sqr_mod(&c, tmp, acc);
            for (j = 3; j >= 0; j--) {
                d <<= 1;
                if (mpz_tstbit(e, (mp_bitcnt_t)(i * 4 + j)))
                    d |= 1;
            }
            if (d) {
                mul_mod(&c, acc, table[d], tmp);
                for (j = 0; j < n; j++)
                    mpz_set(acc[j], tmp[j]);
            }
        }
    }

    /* trim and convert */
    top = n;
    while (top > 0 && mpz_sgn(acc[top - 1]) == 0)
        top--;
    out = PyList_New(top);
    if (out == NULL)
        goto done;
    for (i = 0; i < top; i++) {
        PyObject *item = mpz_to_pylong(acc[i]);
        if (item == NULL) {
            Py_CLEAR(out);
            goto done;
        }
        PyList_SET_ITEM(out, i, item);
    }

done:
    mpz_clear(e);
    mpz_clear(c.p);
    mpz_clear(c.t);
    if (m != NULL)
        mpz_array_free(m, m_len);
    if (base != NULL)
        mpz_array_free(base, b_len);
    if (acc != NULL)
        mpz_array_free(acc, m_len - 1);
    if (tmp != NULL)
        mpz_array_free(tmp, m_len - 1);
    if (c.prod != NULL)
        mpz_array_free(c.prod, 2 * (m_len - 1) - 1 > 0 ? 2 * (m_len - 1) - 1 : 1);
    if (table != NULL) {
        for (i = 0; i < (Py_ssize_t)table_size; i++)
            if (table[i] != NULL)
                mpz_array_free(table[i], m_len - 1);
        free(table);
    }
    return out;
}

/* Monic polynomial gcd over F_p via the Euclidean algorithm. */
static PyObject *
fast_gcdmod(PyObject *self, PyObject *args)
{
    PyObject *a_list, *b_list, *p_obj, *out = NULL;
    mpz_t *a = NULL, *b = NULL;
    Py_ssize_t a_len = 0, b_len = 0, i, j, cap;
    mpz_t p, inv, c, t;

    if (!PyArg_ParseTuple(args, "OOO", &a_list, &b_list, &p_obj))
        return NULL;
    mpz_init(p);
    mpz_init(inv);
    mpz_init(c);
    mpz_init(t);
    if (pylong_to_mpz(p_obj, p) < 0)
        goto done;
    if (mpz_cmp_ui(p, 2) < 0) {
        PyErr_SetString(PyExc_ValueError, "p must be >= 2");
        goto done;
    }
    a = coeff_list_to_mpz(a_list, &a_len);
    if (a == NULL)
        goto done;
    if (a == (mpz_t *)1) {
        a = NULL;
        a_len = 0;
    }
    b = coeff_list_to_mpz(b_list, &b_len);
    if (b == NULL)
        goto done;
    if (b == (mpz_t *)1) {
        b = NULL;
        b_len = 0;
    }
    if (a_len == 0 && b_len == 0) {
        PyErr_SetString(PyExc_ValueError, "gcd(0, 0) undefined");
        goto done;
    }
    /* pad both to a common capacity so swaps are cheap */
    cap = a_len > b_len ? a_len : b_len;
    {
        mpz_t *na = mpz_array_new(cap), *nb = mpz_array_new(cap);
        if (na == NULL || nb == NULL) {
            mpz_array_free(na, na ? cap : 0);
            mpz_array_free(nb, nb ? cap : 0);
            PyErr_NoMemory();
            goto done;
        }
        for (i = 0; i < a_len; i++)
            mpz_set(na[i], a[i]);
        for (i = 0; i < b_len; i++)
            mpz_set(nb[i], b[i]);
        mpz_array_free(a, a_len);
        mpz_array_free(b, b_len);
        a = na;
        b = nb;
    }
    /* lengths as degrees + 1, tracked manually */
    {
        Py_ssize_t da = a_len - 1, db = b_len - 1;
        mpz_t *ra = a, *rb = b;
        /* normalize zero operands: degree -1 */
        while (da >= 0 && mpz_sgn(ra[da]) == 0)
            da--;
        while (db >= 0 && mpz_sgn(rb[db]) == 0)
            db--;
        while (db >= 0) {
            /* ra = ra mod rb (in place), then swap */
            if (da >= db) {
                if (mpz_invert(inv, rb[db], p) == 0) {
                    PyErr_SetString(PyExc_ValueError, "p is not prime");
                    goto done;
                }
                for (i = da; i >= db; i--) {
                    mpz_mul(c, ra[i], inv);
                    mpz_fdiv_r(c, c, p);
                    if (mpz_sgn(c) != 0)
                        for (j = 0; j <= db; j++) {
                            mpz_submul(ra[i - db + j], rb[j], c);
                            mpz_fdiv_r(ra[i - db + j], ra[i - db + j], p);
                        }
                }
                da = db - 1;
                while (da >= 0 && mpz_sgn(ra[da]) == 0)
                    da--;
            }
            {
                mpz_t *tsw = ra;
                Py_ssize_t dsw = da;
                ra = rb;
                da = db;
                rb = tsw;
                db = dsw;
            }
        }
        /* gcd is ra with degree da >= 0; make monic */
        if (da < 0) {
            PyErr_SetString(PyExc_RuntimeError, "internal gcd error");
            goto done;
        }
        if (mpz_invert(inv, ra[da], p) == 0) {
            PyErr_SetString(PyExc_ValueError, "p is not prime");
            goto done;
        }
        out = PyList_New(da + 1);
        if (out == NULL)
            goto done;
        for (i = 0; i <= da; i++) {
            PyObject *item;
            mpz_mul(t, ra[i], inv);
            mpz_fdiv_r(t, t, p);
            item = mpz_to_pylong(t);
            if (item == NULL) {
                Py_CLEAR(out);
                goto done;
            }
            PyList_SET_ITEM(out, i, item);
        }
    }

done:
    mpz_clear(p);
    mpz_clear(inv);
    mpz_clear(c);
    mpz_clear(t);
    if (a != NULL)
        mpz_array_free(a, a_len > b_len ? a_len : (b_len ? b_len : a_len));
    if (b != NULL)
        mpz_array_free(b, a_len > b_len ? a_len : (b_len ? b_len : a_len));
    return out;
}

static PyMethodDef fastpoly_methods[] = {
    {"powmod", fast_powmod, METH_VARARGS,
     "powmod(mod_coeffs, base_coeffs, e, p) -> list[int]\n\n"
     "base^e in F_p[x]/(m) on ascending coefficient lists."},
    {"gcdmod", fast_gcdmod, METH_VARARGS,
     "gcdmod(a_coeffs, b_coeffs, p) -> list[int]\n\n"
     "Monic gcd over F_p on ascending coefficient lists."},
    {NULL, NULL, 0, NULL},
};

static struct PyModuleDef fastpoly_module = {
    PyModuleDef_HEAD_INIT,
    "permrat._fastpoly",
    "GMP-backed modular polynomial exponentiation.",
    -1,
    fastpoly_methods,
};

PyMODINIT_FUNC
PyInit__fastpoly(void)
{
    return PyModule_Create(&fastpoly_module);
}
