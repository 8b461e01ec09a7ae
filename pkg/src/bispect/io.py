"""File formats: versioned JSON documents and binary PGM images.

Every JSON file carries ``format_version`` (currently 1) and a ``kind``
discriminator.  Complex matrices are row-major nested lists with innermost
``[re, im]`` pairs; numbers are written as shortest-round-trip decimal
text, so files are platform independent and load back bit-identically.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from .errors import FormatError, VersionError
from .groups import SO3, SU2, haar_quadrature
from .harmonic import CoefficientSet, SampledFunction
from .bispectrum import BispectrumDescriptor
from .glyphs import GlyphIndex, GlyphRecord
from .sphere import SphereFunction, sphere_grid

FORMAT_VERSION = 1

_KINDS = ("coefficients", "bispectrum_descriptor", "sphere_samples", "group_samples", "glyph_index")


def _encode_complex_matrix(m: np.ndarray) -> list:
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.atleast_2d(m)]


def _decode_complex_matrix(data: Any, where: str) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"matrix is not numeric: {exc}", where) from None
    if arr.ndim != 3 or arr.shape[2] != 2:
        raise FormatError("matrix entries must be [re, im] pairs", where)
    return arr[..., 0] + 1j * arr[..., 1]


def _encode_complex_vector(v: np.ndarray) -> list:
    return [[float(z.real), float(z.imag)] for z in v]


def _decode_complex_vector(data: Any, where: str) -> np.ndarray:
    try:
        arr = np.asarray(data, dtype=float)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"vector is not numeric: {exc}", where) from None
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise FormatError("vector entries must be [re, im] pairs", where)
    return arr[:, 0] + 1j * arr[:, 1]


def _require(doc: dict, key: str, where: str) -> Any:
    if key not in doc:
        raise FormatError(f"missing field {key!r}", where)
    return doc[key]


def _check_header(doc: Any, kind: str, where: str) -> None:
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object", where)
    version = _require(doc, "format_version", where)
    if version != FORMAT_VERSION:
        raise VersionError(f"unsupported format_version {version!r}", where)
    got = _require(doc, "kind", where)
    if got != kind:
        raise FormatError(f"expected kind {kind!r}, found {got!r}", where)


def _check_group(tag: Any, where: str) -> str:
    if tag not in (SU2, SO3):
        raise FormatError(f"group must be 'SU2' or 'SO3', found {tag!r}", where)
    return tag


def _load_json(path: str) -> Any:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON: {exc.msg}", f"{path}:{exc.lineno}:{exc.colno}") from None


def _dump_json(doc: dict, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def peek_kind(path: str) -> str:
    doc = _load_json(path)
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError("document carries no 'kind' field", path)
    return doc["kind"]


# -- coefficient sets --------------------------------------------------------


def save_coefficients(coeffs: CoefficientSet, path: str) -> None:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "coefficients",
        "group": coeffs.tag,
        "bandlimit": coeffs.bandlimit,
        "matrices": [_encode_complex_matrix(coeffs[ell]) for ell in range(coeffs.bandlimit + 1)],
    }
    _dump_json(doc, path)


def load_coefficients(path: str) -> CoefficientSet:
    doc = _load_json(path)
    _check_header(doc, "coefficients", path)
    tag = _check_group(_require(doc, "group", path), path)
    bandlimit = int(_require(doc, "bandlimit", path))
    raw = _require(doc, "matrices", path)
    if len(raw) != bandlimit + 1:
        raise FormatError(f"expected {bandlimit + 1} matrices, found {len(raw)}", path)
    mats = tuple(_decode_complex_matrix(m, f"{path}:matrices[{i}]") for i, m in enumerate(raw))
    return CoefficientSet(tag, bandlimit, mats)


# -- descriptors -------------------------------------------------------------


def _descriptor_doc(desc: BispectrumDescriptor) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "bispectrum_descriptor",
        "group": desc.tag,
        "bandlimit": desc.bandlimit,
        "entries": [
            {"p": p, "q": q, "matrix": _encode_complex_matrix(desc[(p, q)])} for p, q in desc.pairs()
        ],
    }
    if desc.det_f1 is not None:
        doc["det_f1"] = float(desc.det_f1)
    return doc


def save_descriptor(desc: BispectrumDescriptor, path: str) -> None:
    _dump_json(_descriptor_doc(desc), path)


def _descriptor_from_doc(doc: dict, where: str) -> BispectrumDescriptor:
    tag = _check_group(_require(doc, "group", where), where)
    bandlimit = int(_require(doc, "bandlimit", where))
    entries = {}
    for i, item in enumerate(_require(doc, "entries", where)):
        loc = f"{where}:entries[{i}]"
        if not isinstance(item, dict):
            raise FormatError("entry must be an object", loc)
        p, q = int(_require(item, "p", loc)), int(_require(item, "q", loc))
        entries[(p, q)] = _decode_complex_matrix(_require(item, "matrix", loc), f"{loc}.matrix")
    det = doc.get("det_f1")
    return BispectrumDescriptor(tag, bandlimit, entries, None if det is None else float(det))


def load_descriptor(path: str) -> BispectrumDescriptor:
    doc = _load_json(path)
    _check_header(doc, "bispectrum_descriptor", path)
    return _descriptor_from_doc(doc, path)


# -- sphere samples ----------------------------------------------------------


def save_sphere(s: SphereFunction, path: str) -> None:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "sphere_samples",
        "resolution": s.resolution,
        "values": _encode_complex_matrix(s.values),
    }
    _dump_json(doc, path)


def load_sphere(path: str) -> SphereFunction:
    doc = _load_json(path)
    _check_header(doc, "sphere_samples", path)
    resolution = int(_require(doc, "resolution", path))
    values = _decode_complex_matrix(_require(doc, "values", path), f"{path}:values")
    return SphereFunction(sphere_grid(resolution), values)


# -- group samples -----------------------------------------------------------


def save_samples(f: SampledFunction, path: str) -> None:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "group_samples",
        "group": f.tag,
        "rule_bandlimit": f.rule.bandlimit,
        "values": _encode_complex_vector(f.values),
    }
    _dump_json(doc, path)


def load_samples(path: str) -> SampledFunction:
    doc = _load_json(path)
    _check_header(doc, "group_samples", path)
    tag = _check_group(_require(doc, "group", path), path)
    rule = haar_quadrature(int(_require(doc, "rule_bandlimit", path)), tag)
    values = _decode_complex_vector(_require(doc, "values", path), f"{path}:values")
    return SampledFunction(tag, rule, values)


# -- glyph index -------------------------------------------------------------


def save_glyph_index(index: GlyphIndex, path: str) -> None:
    doc = {
        "format_version": FORMAT_VERSION,
        "kind": "glyph_index",
        "bandlimit": index.bandlimit,
        "glyphs": [
            {"label": rec.label, "source": rec.source, "descriptor": _descriptor_doc(rec.descriptor)}
            for rec in index.records
        ],
    }
    _dump_json(doc, path)


def load_glyph_index(path: str) -> GlyphIndex:
    doc = _load_json(path)
    _check_header(doc, "glyph_index", path)
    bandlimit = int(_require(doc, "bandlimit", path))
    records = []
    for i, item in enumerate(_require(doc, "glyphs", path)):
        loc = f"{path}:glyphs[{i}]"
        label = str(_require(item, "label", loc))
        desc_doc = _require(item, "descriptor", loc)
        _check_header(desc_doc, "bispectrum_descriptor", loc)
        desc = _descriptor_from_doc(desc_doc, f"{loc}.descriptor")
        records.append(GlyphRecord(label, desc, dict(item.get("source", {}))))
    return GlyphIndex(bandlimit, tuple(records))


# -- PGM (binary P5) ---------------------------------------------------------


def read_pgm(path: str) -> np.ndarray:
    """Binary PGM (P5, maxval <= 255) as floats in [0, 1]."""
    with open(path, "rb") as fh:
        data = fh.read()
    tokens: list[bytes] = []
    pos = 0
    while len(tokens) < 4 and pos < len(data):
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] != 0x0A:
                pos += 1
            continue
        start = pos
        while pos < len(data) and not data[pos : pos + 1].isspace():
            pos += 1
        tokens.append(data[start:pos])
    if len(tokens) < 4 or tokens[0] != b"P5":
        raise FormatError("not a binary PGM (P5) file", path)
    try:
        width, height, maxval = int(tokens[1]), int(tokens[2]), int(tokens[3])
    except ValueError:
        raise FormatError("malformed PGM header", path) from None
    if maxval <= 0 or maxval > 255:
        raise FormatError(f"unsupported PGM maxval {maxval} (need <= 255)", path)
    pos += 1  # single whitespace after maxval
    raw = data[pos : pos + width * height]
    if len(raw) != width * height:
        raise FormatError("PGM pixel data truncated", path)
    img = np.frombuffer(raw, dtype=np.uint8).reshape(height, width)
    return img.astype(float) / maxval


def write_pgm(image: np.ndarray, path: str) -> None:
    """Write floats in [0, 1] as a binary PGM (P5, maxval 255)."""
    img = np.asarray(image, dtype=float)
    if img.ndim != 2:
        raise FormatError("PGM images must be 2-d", path)
    quantized = np.clip(np.round(img * 255.0), 0, 255).astype(np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode())
        fh.write(quantized.tobytes())
