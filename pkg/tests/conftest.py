import sympy

from bottbasis.laurent import LaurentPoly, VarTable


def sym_vars(vt: VarTable):
    params = sympy.symbols(f"t1:{vt.parameter_count + 1}") if vt.parameter_count else ()
    names = ["v_" + "_".join(map(str, n)) if isinstance(n, tuple) else f"v_{n}" for n in vt.entry_vars]
    entries = sympy.symbols(names) if names else ()
    if len(names) == 1:
        entries = (entries[0],) if isinstance(entries, tuple) else (entries,)
    return tuple(params), tuple(entries)


def to_sympy(p: LaurentPoly):
    """Independent rendering of ``p`` as a sympy expression."""
    params, entries = sym_vars(p.vartable)
    syms = params + entries
    expr = sympy.Integer(0)
    for exps, c in p.terms():
        term = sympy.Rational(c.numerator, c.denominator) if hasattr(c, "denominator") else sympy.Integer(c)
        for s, e in zip(syms, exps):
            term *= s ** e
        expr += term
    return sympy.expand(expr)
