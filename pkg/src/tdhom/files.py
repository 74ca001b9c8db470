"""Reading and writing structure files (format tag "tdhom/1").

A structure file is a JSON object:

    {
      "format": "tdhom/1",
      "name": "sl2",
      "role": "lie",
      "spaces": [{"name": "L", "labels": ["e", "f", "h"]}],
      "maps": [{"name": "bracket", "domain": ["L", "L"], "codomain": "L",
                "entries": [[[0, 1], 2, "1"], ...]}]
    }

Coefficients are fraction strings ("-3/2"), never floats.  Roles and their
required maps:

    coalgebra      "coproduct": {"space": ..., "entries": [[i, j, k, q], ...]}
    lie            bracket
    associative    product
    module         bracket, action       (action codomain names the module)
    poisson        bracket, product
    lie-rinehart   bracket, product, action, bmodule
    multilinear    exactly one map, any name and shape
    hom-element    coproduct plus "matrix": {"entries": [[t, c, q], ...]}

Axiom checks run on load and raise AxiomError; pass unsafe_skip_axioms=True
to get the raw object anyway.  Serialization is canonical: sorted keys,
sorted entry lists, two-space indent, trailing newline, so equal structures
produce byte-identical files.
"""

import json
from fractions import Fraction

from .algebra import AssociativeAlgebra, LieAlgebra, LieModule, PoissonAlgebra
from .coalgebra import Coalgebra
from .convolution import HomElement
from .errors import AxiomError, MalformedInput, ParseError
from .linalg import BasedSpace
from .maps import MultilinearMap

FORMAT_TAG = "tdhom/1"

ROLES = (
    "coalgebra", "lie", "associative", "module", "poisson",
    "lie-rinehart", "multilinear", "hom-element",
)


def _fail(path, msg):
    raise ParseError("%s: %s" % (path, msg))


def _field(obj, key, kind, path):
    if not isinstance(obj, dict):
        _fail(path, "expected an object")
    if key not in obj:
        _fail(path, "missing field %r" % key)
    value = obj[key]
    if kind is int and isinstance(value, bool):
        _fail("%s.%s" % (path, key), "expected an integer, got a boolean")
    if not isinstance(value, kind):
        _fail("%s.%s" % (path, key),
              "expected %s, got %s" % (kind.__name__, type(value).__name__))
    return value


def _scalar(raw, path):
    if not isinstance(raw, str):
        _fail(path, "coefficients must be fraction strings, got %s"
              % type(raw).__name__)
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        _fail(path, "not a fraction: %r" % raw)


def _index(raw, dim, path):
    if isinstance(raw, bool) or not isinstance(raw, int):
        _fail(path, "expected a basis index")
    if not 0 <= raw < dim:
        _fail(path, "index %d out of range [0, %d)" % (raw, dim))
    return raw


def _parse_spaces(doc, path):
    raw = _field(doc, "spaces", list, path)
    if not raw:
        _fail(path + ".spaces", "at least one space required")
    spaces = {}
    for pos, entry in enumerate(raw):
        here = "%s.spaces[%d]" % (path, pos)
        name = _field(entry, "name", str, here)
        labels = _field(entry, "labels", list, here)
        if not labels or not all(isinstance(x, str) for x in labels):
            _fail(here + ".labels", "need a non-empty list of strings")
        if len(set(labels)) != len(labels):
            _fail(here + ".labels", "duplicate label")
        if name in spaces:
            _fail(here, "duplicate space name %r" % name)
        spaces[name] = BasedSpace(name, tuple(labels))
    return spaces


def _parse_map(entry, spaces, path):
    name = _field(entry, "name", str, path)
    domain_names = _field(entry, "domain", list, path)
    codomain_name = _field(entry, "codomain", str, path)
    if not domain_names:
        _fail(path + ".domain", "empty domain")
    domain = []
    for pos, sp in enumerate(domain_names):
        if sp not in spaces:
            _fail("%s.domain[%d]" % (path, pos), "unknown space %r" % sp)
        domain.append(spaces[sp])
    if codomain_name not in spaces:
        _fail(path + ".codomain", "unknown space %r" % codomain_name)
    codomain = spaces[codomain_name]
    table = {}
    for pos, row in enumerate(_field(entry, "entries", list, path)):
        here = "%s.entries[%d]" % (path, pos)
        if not isinstance(row, list) or len(row) != 3:
            _fail(here, "expected [indices, out, coefficient]")
        args, out, raw_q = row
        if not isinstance(args, list) or len(args) != len(domain):
            _fail(here, "expected %d argument indices" % len(domain))
        tup = tuple(_index(a, spaces[sp].dim, here)
                    for a, sp in zip(args, domain_names))
        o = _index(out, codomain.dim, here)
        q = _scalar(raw_q, here)
        key = (tup, o)
        table[key] = table.get(key, Fraction(0)) + q
    table = {k: v for k, v in table.items() if v != 0}
    return name, MultilinearMap(tuple(domain), codomain, table)


def _parse_maps(doc, spaces, path, required):
    """required: list of (name, arity); returns maps keyed by name."""
    raw = _field(doc, "maps", list, path)
    found = {}
    for pos, entry in enumerate(raw):
        here = "%s.maps[%d]" % (path, pos)
        name, m = _parse_map(entry, spaces, here)
        if name in found:
            _fail(here, "duplicate map name %r" % name)
        found[name] = m
    for name, arity in required:
        if name not in found:
            _fail(path + ".maps", "missing map %r" % name)
        if found[name].arity != arity:
            _fail(path + ".maps", "map %r must take %d arguments" % (name, arity))
    extras = set(found) - {name for name, _ in required}
    if required and extras:
        _fail(path + ".maps", "unexpected maps: %s" % ", ".join(sorted(extras)))
    return found


def _parse_coproduct(doc, spaces, path, check):
    cop = _field(doc, "coproduct", dict, path)
    sp_name = _field(cop, "space", str, path + ".coproduct")
    if sp_name not in spaces:
        _fail(path + ".coproduct.space", "unknown space %r" % sp_name)
    space = spaces[sp_name]
    triples = []
    for pos, row in enumerate(_field(cop, "entries", list, path + ".coproduct")):
        here = "%s.coproduct.entries[%d]" % (path, pos)
        if not isinstance(row, list) or len(row) != 4:
            _fail(here, "expected [source, left, right, coefficient]")
        i, j, k, raw_q = row
        triples.append((_index(i, space.dim, here), _index(j, space.dim, here),
                        _index(k, space.dim, here), _scalar(raw_q, here)))
    try:
        return Coalgebra(space, triples, check=check)
    except MalformedInput as exc:
        _fail(path + ".coproduct", str(exc))


def parse_structure(text, unsafe_skip_axioms=False):
    """Parse a tdhom/1 document into the matching structure object.

    Raises ParseError (with a field path, or line/column for JSON syntax)
    on malformed input, AxiomError when the declared role's axioms fail.
    The returned object carries the file's name as .structure_name.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("line %d column %d: %s"
                         % (exc.lineno, exc.colno, exc.msg)) from None
    if not isinstance(doc, dict):
        _fail("$", "top level must be an object")
    tag = _field(doc, "format", str, "$")
    if tag != FORMAT_TAG:
        _fail("$.format", "unsupported format %r (want %r)" % (tag, FORMAT_TAG))
    name = _field(doc, "name", str, "$")
    role = _field(doc, "role", str, "$")
    if role not in ROLES:
        _fail("$.role", "unknown role %r" % role)
    spaces = _parse_spaces(doc, "$")
    check = not unsafe_skip_axioms
    obj = _parse_role(doc, role, spaces, check)
    obj.structure_name = name
    return obj


def _require_shape(m, domain, codomain, what):
    if tuple(m.domain) != tuple(domain) or m.codomain is not codomain:
        _fail("$.maps", "%s has the wrong shape" % what)


def _parse_role(doc, role, spaces, check):
    if role == "coalgebra":
        return _parse_coproduct(doc, spaces, "$", check)

    if role == "hom-element":
        C = _parse_coproduct(doc, spaces, "$", check)
        mat = _field(doc, "matrix", dict, "$")
        target_name = _field(mat, "target", str, "$.matrix")
        if target_name not in spaces:
            _fail("$.matrix.target", "unknown space %r" % target_name)
        target = spaces[target_name]
        entries = {}
        for pos, row in enumerate(_field(mat, "entries", list, "$.matrix")):
            here = "$.matrix.entries[%d]" % pos
            if not isinstance(row, list) or len(row) != 3:
                _fail(here, "expected [target, source, coefficient]")
            t, c, raw_q = row
            key = (_index(t, target.dim, here), _index(c, C.dim, here))
            entries[key] = entries.get(key, Fraction(0)) + _scalar(raw_q, here)
        return HomElement(C, target, entries)

    if role == "multilinear":
        found = _parse_maps(doc, spaces, "$", [])
        if len(found) != 1:
            _fail("$.maps", "role multilinear needs exactly one map")
        ((map_name, m),) = found.items()
        m.map_name = map_name
        return m

    if role == "lie":
        found = _parse_maps(doc, spaces, "$", [("bracket", 2)])
        b = found["bracket"]
        L = b.codomain
        _require_shape(b, (L, L), L, "bracket")
        return LieAlgebra(L, b, check=check)

    if role == "associative":
        found = _parse_maps(doc, spaces, "$", [("product", 2)])
        p = found["product"]
        A = p.codomain
        _require_shape(p, (A, A), A, "product")
        return AssociativeAlgebra(A, p, check=check)

    if role == "module":
        found = _parse_maps(doc, spaces, "$", [("bracket", 2), ("action", 2)])
        b, act = found["bracket"], found["action"]
        L, B = b.codomain, act.codomain
        _require_shape(b, (L, L), L, "bracket")
        _require_shape(act, (L, B), B, "action")
        base = LieAlgebra(L, b, check=check)
        return LieModule(base, B, act, check=check)

    if role == "poisson":
        found = _parse_maps(doc, spaces, "$", [("bracket", 2), ("product", 2)])
        b, p = found["bracket"], found["product"]
        A = b.codomain
        _require_shape(b, (A, A), A, "bracket")
        _require_shape(p, (A, A), A, "product")
        return PoissonAlgebra(A, b, p, check=check)

    if role == "lie-rinehart":
        from .lie_rinehart import LieRinehartPair
        found = _parse_maps(doc, spaces, "$", [
            ("bracket", 2), ("product", 2), ("action", 2), ("bmodule", 2)])
        b, p = found["bracket"], found["product"]
        act, mu = found["action"], found["bmodule"]
        L, B = b.codomain, p.codomain
        _require_shape(b, (L, L), L, "bracket")
        _require_shape(p, (B, B), B, "product")
        _require_shape(act, (L, B), B, "action")
        _require_shape(mu, (B, L), L, "bmodule")
        return LieRinehartPair(L, B, b, p, act, mu, check=check)

    raise AssertionError(role)


def _format_scalar(q):
    return str(Fraction(q))


def _space_doc(space):
    return {"name": space.name, "labels": list(space.labels)}


def _map_doc(name, m):
    entries = sorted(((list(tup), out, _format_scalar(q))
                      for (tup, out), q in m.entries.items()),
                     key=lambda row: (row[0], row[1]))
    return {
        "name": name,
        "domain": [sp.name for sp in m.domain],
        "codomain": m.codomain.name,
        "entries": entries,
    }


def _coproduct_doc(C):
    entries = sorted([i, j, k, _format_scalar(q)]
                     for (i, j, k), q in C.coproduct.items())
    return {"space": C.space.name, "entries": entries}


def _unique_spaces(spaces):
    seen = {}
    for sp in spaces:
        prev = seen.get(sp.name)
        if prev is not None and prev is not sp:
            raise MalformedInput(
                "two distinct spaces share the name %r" % sp.name)
        seen[sp.name] = sp
    return [_space_doc(sp) for sp in seen.values()]


def serialize_structure(obj, name=None):
    """Render a structure back to canonical tdhom/1 text.

    Canonical means: sorted keys, entry lists sorted by indices, indent 2,
    trailing newline.  parse . serialize is the identity up to that
    normalization, and byte-identical on already-canonical files.
    """
    if name is None:
        name = getattr(obj, "structure_name", None) or getattr(obj, "name", "")
    doc = {"format": FORMAT_TAG, "name": name}

    if isinstance(obj, Coalgebra):
        doc["role"] = "coalgebra"
        doc["spaces"] = _unique_spaces([obj.space])
        doc["coproduct"] = _coproduct_doc(obj)
    elif isinstance(obj, HomElement):
        doc["role"] = "hom-element"
        doc["spaces"] = _unique_spaces([obj.source.space, obj.target])
        doc["coproduct"] = _coproduct_doc(obj.source)
        doc["matrix"] = {
            "target": obj.target.name,
            "entries": sorted([t, c, _format_scalar(q)]
                              for (t, c), q in obj.entries.items()),
        }
    elif isinstance(obj, LieAlgebra):
        doc["role"] = "lie"
        doc["spaces"] = _unique_spaces([obj.space])
        doc["maps"] = [_map_doc("bracket", obj.bracket)]
    elif isinstance(obj, AssociativeAlgebra):
        doc["role"] = "associative"
        doc["spaces"] = _unique_spaces([obj.space])
        doc["maps"] = [_map_doc("product", obj.product)]
    elif isinstance(obj, LieModule):
        doc["role"] = "module"
        doc["spaces"] = _unique_spaces([obj.base.space, obj.space])
        doc["maps"] = [_map_doc("bracket", obj.base.bracket),
                       _map_doc("action", obj.action)]
    elif isinstance(obj, PoissonAlgebra):
        doc["role"] = "poisson"
        doc["spaces"] = _unique_spaces([obj.space])
        doc["maps"] = [_map_doc("bracket", obj.bracket),
                       _map_doc("product", obj.product)]
    elif isinstance(obj, MultilinearMap):
        doc["role"] = "multilinear"
        doc["spaces"] = _unique_spaces(list(obj.domain) + [obj.codomain])
        doc["maps"] = [_map_doc(getattr(obj, "map_name", "map"), obj)]
    else:
        from .lie_rinehart import LieRinehartPair
        if isinstance(obj, LieRinehartPair):
            doc["role"] = "lie-rinehart"
            doc["spaces"] = _unique_spaces([obj.lie_space, obj.ring_space])
            doc["maps"] = [_map_doc("bracket", obj.bracket),
                           _map_doc("product", obj.product),
                           _map_doc("action", obj.action),
                           _map_doc("bmodule", obj.bmodule)]
        else:
            raise MalformedInput("cannot serialize %s" % type(obj).__name__)

    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_path(path, unsafe_skip_axioms=False):
    with open(path, "r", encoding="utf-8") as fh:
        return parse_structure(fh.read(), unsafe_skip_axioms=unsafe_skip_axioms)
