"""Trace files and reports.

A trace file is JSON lines.  Line 1 is the header: format tag, model id,
model parameters (maze reference for Pac-Man), seed, agent id and the state
encoding (``full`` canonical state or 64-bit ``hash``).  Each later line is
one tick: its index (strictly increasing from 1), the input symbol, and the
post-state.  Reading replays the inputs on the model named in the header and
rejects the file if any recorded state or hash disagrees.

Reports are a single JSON document with sorted keys, and every rational or
float rendered as a string with six decimals, so equal inputs give equal bytes.
"""
from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from .core import UNDEFINED, GameModel, InputSymbol, InputWord, Trace, UnknownSymbol, step, to_jsonable

TRACE_FORMAT = "gamemonoid-trace/1"
REPORT_FORMAT = "gamemonoid-report/1"


class TraceFormatError(ValueError):
    def __init__(self, path, line: int, msg: str):
        self.path = str(path)
        self.line = line
        super().__init__(f"{path}:{line}: {msg}")


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def atomic_write(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent)
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def trace_header(trace: Trace, encoding: str = "full") -> dict:
    meta = trace.meta
    return {
        "format": TRACE_FORMAT,
        "model": trace.model_id,
        "params": dict(meta.get("params", {})),
        "seed": meta.get("seed"),
        "agent": meta.get("agent"),
        "encoding": encoding,
    }


def dumps_trace(trace: Trace, encoding: str = "full") -> str:
    if encoding not in ("full", "hash"):
        raise ValueError("encoding must be 'full' or 'hash'")
    lines = [_dumps(trace_header(trace, encoding))]
    for i, sym in enumerate(trace.word, 1):
        s = trace.states[i]
        rec = {"tick": i, "input": str(sym)}
        if encoding == "full":
            rec["state"] = s.to_json()
        else:
            rec["hash"] = s.content_hash()
        lines.append(_dumps(rec))
    return "\n".join(lines) + "\n"


def write_trace(trace: Trace, path: str | Path, encoding: str | None = None) -> None:
    atomic_write(path, dumps_trace(trace, encoding or trace.meta.get("encoding", "full")))


def _default_builder(model_id: str, params: dict) -> GameModel:
    from .registry import build_model

    return build_model(model_id, params)


def loads_trace(text: str, path: str | Path = "<string>",
                builder: Callable[[str, dict], GameModel] | None = None) -> Trace:
    builder = builder or _default_builder
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise TraceFormatError(path, 1, "empty file, header expected")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as exc:
        raise TraceFormatError(path, 1, f"header is not JSON ({exc.msg})") from None
    if not isinstance(header, dict) or header.get("format") != TRACE_FORMAT:
        raise TraceFormatError(path, 1, f"header must declare format {TRACE_FORMAT!r}")
    encoding = header.get("encoding", "full")
    if encoding not in ("full", "hash"):
        raise TraceFormatError(path, 1, f"unknown state encoding {encoding!r}")
    try:
        model = builder(header["model"], dict(header.get("params") or {}))
    except (KeyError, ValueError) as exc:
        raise TraceFormatError(path, 1, f"cannot build model: {exc}") from None
    seed = header.get("seed")
    cur = model.initial_for(seed)
    states = [cur]
    word = []
    for n, raw in enumerate(lines[1:], 2):
        try:
            rec = json.loads(raw)
            tick = rec["tick"]
            sym = InputSymbol.parse(rec["input"])
        except (json.JSONDecodeError, KeyError, TypeError, ValueError):
            raise TraceFormatError(path, n, "malformed tick record") from None
        if not isinstance(tick, int) or tick != len(states):
            raise TraceFormatError(path, n, f"tick {tick!r} out of order, expected {len(states)}")
        try:
            nxt = step(model, cur, sym)
        except UnknownSymbol:
            raise TraceFormatError(path, n, f"input {rec['input']!r} not in the alphabet of {model.id}") from None
        if nxt is UNDEFINED:
            raise TraceFormatError(path, n, f"input {rec['input']!r} is undefined at tick {tick}")
        if encoding == "full":
            if "state" not in rec or _dumps(rec["state"]) != _dumps(nxt.to_json()):
                raise TraceFormatError(path, n, f"recorded state differs from replay at tick {tick}")
        elif rec.get("hash") != nxt.content_hash():
            raise TraceFormatError(path, n, f"recorded hash differs from replay at tick {tick}")
        word.append(sym)
        states.append(nxt)
        cur = nxt
    meta = {
        "id": Path(str(path)).name,
        "seed": seed,
        "agent": header.get("agent"),
        "params": dict(header.get("params") or {}),
        "encoding": encoding,
    }
    return Trace(model.id, states[0], InputWord(tuple(word)), tuple(states), meta)


def read_trace(path: str | Path, builder: Callable[[str, dict], GameModel] | None = None) -> Trace:
    path = Path(path)
    return loads_trace(path.read_text(), path, builder)


def _fmt(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, int)):
        return obj
    if isinstance(obj, (Fraction, float)):
        return f"{float(obj):.6f}"
    if isinstance(obj, dict):
        return {str(k): _fmt(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_fmt(v) for v in obj]
    if hasattr(obj, "to_json"):
        return _fmt(obj.to_json())
    return _fmt(to_jsonable(obj))


def render_report(doc: dict) -> str:
    body = {"format": REPORT_FORMAT, **doc}
    return json.dumps(_fmt(body), sort_keys=True, indent=2) + "\n"


def write_report(doc: dict, path: str | Path | None) -> str:
    text = render_report(doc)
    if path is not None:
        atomic_write(path, text)
    return text
