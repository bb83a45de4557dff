"""Reading and writing media, length functions, orientations and graph/family text."""

from __future__ import annotations

import json
import shlex
from dataclasses import dataclass, field

from .core import LengthFunction, Medium, MediumError, Orientation, TokenTable
from .generators import SetFamily


class FormatError(MediumError):
    pass


def medium_to_dict(M: Medium) -> dict:
    tokens = []
    for t in range(M.tau):
        entry = {"id": t, "reverse": M.tokens.reverse[t]}
        if M.tokens.labels is not None:
            entry["label"] = M.tokens.labels[t]
        tokens.append(entry)
    states = []
    for s in range(M.n):
        entry = {"id": s}
        if M.state_labels is not None:
            entry["label"] = M.state_labels[s]
        entry["transitions"] = [{"token": t, "to": q} for t, q in M.adjacency[s]]
        states.append(entry)
    return {"tokens": tokens, "states": states}


def dumps_medium(M: Medium) -> str:
    """Canonical text: one token or state per line, transitions sorted by token."""
    doc = medium_to_dict(M)
    lines = ['{"tokens":[']
    lines.append(",\n".join(json.dumps(t, ensure_ascii=False, separators=(",", ":")) for t in doc["tokens"]))
    lines.append('],"states":[')
    lines.append(",\n".join(json.dumps(s, ensure_ascii=False, separators=(",", ":")) for s in doc["states"]))
    lines.append("]}")
    return "\n".join(line for line in lines if line) + "\n"


def _require(cond: bool, msg: str):
    if not cond:
        raise FormatError(msg)


def _int(value, what: str) -> int:
    _require(isinstance(value, int) and not isinstance(value, bool), f"{what} must be an integer")
    return value


def medium_from_dict(doc: dict) -> Medium:
    _require(isinstance(doc, dict), "medium document must be an object")
    _require(isinstance(doc.get("tokens"), list), "missing token list")
    _require(isinstance(doc.get("states"), list), "missing state list")
    reverse, labels = [], []
    for i, tok in enumerate(doc["tokens"]):
        _require(isinstance(tok, dict), f"token entry {i} must be an object")
        _require(_int(tok.get("id"), f"token {i} id") == i, f"token ids must be dense from 0 (entry {i})")
        reverse.append(_int(tok.get("reverse"), f"token {i} reverse"))
        labels.append(tok.get("label"))
    tau = len(reverse)
    for t, r in enumerate(reverse):
        _require(0 <= r < tau, f"token {t}: reverse {r} out of range")
        _require(r != t and reverse[r] == t, f"token {t}: reverse map is not a fixed-point-free involution")
    if all(lab is None for lab in labels):
        token_labels = None
    else:
        _require(all(isinstance(lab, str) for lab in labels), "label every token or none")
        _require(len(set(labels)) == tau, "token labels must be unique")
        token_labels = tuple(labels)
    n = len(doc["states"])
    _require(n >= 1, "a medium needs at least one state")
    adjacency, state_labels = [], []
    for i, st in enumerate(doc["states"]):
        _require(isinstance(st, dict), f"state entry {i} must be an object")
        _require(_int(st.get("id"), f"state {i} id") == i, f"state ids must be dense from 0 (entry {i})")
        state_labels.append(st.get("label"))
        row = []
        for tr in st.get("transitions", []):
            _require(isinstance(tr, dict), f"state {i}: transition must be an object")
            t = _int(tr.get("token"), f"state {i} transition token")
            q = _int(tr.get("to"), f"state {i} transition target")
            _require(0 <= t < tau, f"state {i}: token {t} out of range")
            _require(0 <= q < n, f"state {i}: target {q} out of range")
            _require(q != i, f"state {i}: token {t} listed as ineffective self-loop")
            row.append((t, q))
        adjacency.append(tuple(row))
    if all(lab is None for lab in state_labels):
        slabels = None
    else:
        _require(all(isinstance(lab, str) for lab in state_labels), "label every state or none")
        slabels = tuple(state_labels)
    return Medium(n, TokenTable(tuple(reverse), token_labels), tuple(adjacency), slabels)


def loads_medium(text: str) -> Medium:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not JSON: {exc}") from None
    return medium_from_dict(doc)


def load_medium(path) -> Medium:
    with open(path, encoding="utf-8") as fh:
        return loads_medium(fh.read())


def save_medium(M: Medium, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_medium(M))


# -- lengths and orientations ---------------------------------------------------------

def _token_key(key, tau: int) -> int:
    try:
        t = int(key)
    except (TypeError, ValueError):
        raise FormatError(f"token id {key!r} is not an integer") from None
    _require(0 <= t < tau and str(t) == str(key).strip(), f"token id {key!r} out of range")
    return t


def lengths_from_dict(M: Medium, doc: dict) -> LengthFunction:
    """``{"token id": length}``; absent tokens get length 1."""
    _require(isinstance(doc, dict), "lengths must be an object")
    values = {}
    for key, v in doc.items():
        _require(isinstance(v, (int, float)) and not isinstance(v, bool), f"length of {key} must be a number")
        values[_token_key(key, M.tau)] = float(v)
    return LengthFunction.from_mapping(M.tokens, values)


def load_lengths(M: Medium, path) -> LengthFunction:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"not JSON: {exc}") from None
    return lengths_from_dict(M, doc)


def dumps_lengths(lam: LengthFunction) -> str:
    return json.dumps({str(t): v for t, v in enumerate(lam.values)}) + "\n"


_SIGNS = {"+": True, "-": False, "−": False}


def orientation_from_dict(M: Medium, doc: dict) -> Orientation:
    """``{"token id": "+" or "-"}`` for every token (U+2212 accepted for minus)."""
    _require(isinstance(doc, dict), "orientation must be an object")
    signs = [None] * M.tau
    for key, v in doc.items():
        _require(v in _SIGNS, f"sign of token {key} must be '+' or '-'")
        signs[_token_key(key, M.tau)] = _SIGNS[v]
    missing = [t for t, s in enumerate(signs) if s is None]
    _require(not missing, f"no sign for tokens {missing}")
    o = Orientation(tuple(signs))
    o.check(M.tokens)
    return o


def load_orientation(M: Medium, path) -> Orientation:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"not JSON: {exc}") from None
    return orientation_from_dict(M, doc)


def orientation_to_dict(o: Orientation) -> dict:
    return {str(t): "+" if p else "-" for t, p in enumerate(o.positive)}


# -- line-oriented text -------------------------------------------------------------

@dataclass
class TextInput:
    """Parsed ``vertex``/``edge``/``arc``/``set`` lines; vertex order is first mention."""

    vertices: list[str] = field(default_factory=list)
    edges: list[tuple[str, str]] = field(default_factory=list)
    arcs: list[tuple[str, str]] = field(default_factory=list)
    sets: list[list[str]] = field(default_factory=list)

    def _vertex(self, v: str):
        if v not in self.vertices:
            self.vertices.append(v)

    def family(self) -> SetFamily:
        _require(bool(self.sets), "no 'set' lines")
        elements = list(self.vertices)
        for s in self.sets:
            for x in s:
                if x not in elements:
                    elements.append(x)
        keys = [frozenset(s) for s in self.sets]
        _require(len(set(keys)) == len(keys), "duplicate sets")
        used = set().union(*keys)
        _require(used == set(elements), f"elements {sorted(set(elements) - used)} appear in no set")
        return SetFamily.from_sets([sorted(s, key=elements.index) for s in self.sets], elements)


def parse_text(text: str) -> TextInput:
    out = TextInput()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = shlex.split(line)
        kind, args = words[0], words[1:]
        if kind == "vertex":
            for v in args:
                out._vertex(v)
        elif kind in ("edge", "arc"):
            _require(len(args) == 2, f"line {lineno}: '{kind}' takes two vertices")
            a, b = args
            _require(a != b, f"line {lineno}: self-loop {a}")
            out._vertex(a)
            out._vertex(b)
            (out.edges if kind == "edge" else out.arcs).append((a, b))
        elif kind == "set":
            _require(len(set(args)) == len(args), f"line {lineno}: repeated element")
            out.sets.append(args)
        else:
            raise FormatError(f"line {lineno}: unknown directive {kind!r}")
    return out


def load_text(path) -> TextInput:
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())
