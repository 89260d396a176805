"""
JSON file utilities for mrdkit
Reads and writes field contexts, matrices, codes and self-dual certificates

File shapes:
    ctx          {"p", "e", "n", "base_poly", "ext_poly"}
    matrix       {"m", "n", "entries": [[row-major integer encodings]]}
    code         {"ctx", "m", "n", "generators": [matrix, ...]}
    certificate  {"params": {"i", "h", "j"}, "A_sym", "B_sym", "P", "Q",
                  "source": code, "code": code}
"""
import json
import logging
import sys
from pathlib import Path

import numpy as np

# Add repository root to path to import config
sys.path.append(str(Path(__file__).resolve().parents[2]))
from config.settings import DATA_DIR, JSON_INDENT

from mrdkit.utils import rankcode
from mrdkit.utils.errors import BadFile
from mrdkit.utils.ffield import field_ctx_new
from mrdkit.utils.selfdual import SelfDualCertificate

logger = logging.getLogger(__name__)


def ensure_data_dir(path=None):
    """Create the parent directory of `path` (or DATA_DIR) if it doesn't exist"""
    target = Path(path).parent if path else DATA_DIR
    target.mkdir(parents=True, exist_ok=True)


def load_json(path):
    """Load a JSON document, raising BadFile on unreadable or invalid input"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise BadFile(f"{path} is not valid JSON: {e}") from e


def save_json(document, path):
    """Save a JSON document with sorted keys"""
    ensure_data_dir(path)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(document, f, indent=JSON_INDENT, sort_keys=True)
        f.write("\n")
    logger.info("Wrote %s", path)


def _field(document, key):
    try:
        return document[key]
    except (KeyError, TypeError) as e:
        raise BadFile(f"missing field {key!r}") from e


def ctx_to_dict(ctx):
    return {
        "p": ctx.p,
        "e": ctx.e,
        "n": ctx.n,
        "base_poly": list(ctx.base_poly),
        "ext_poly": list(ctx.ext_poly),
    }


def ctx_from_dict(document):
    return field_ctx_new(
        int(_field(document, "p")),
        int(_field(document, "e")),
        int(_field(document, "n")),
        base_poly=document.get("base_poly"),
        ext_poly=document.get("ext_poly"),
    )


def matrix_to_dict(M):
    return {"m": int(M.shape[0]), "n": int(M.shape[1]), "entries": M.tolist()}


def matrix_from_dict(ctx, document):
    m, n = int(_field(document, "m")), int(_field(document, "n"))
    entries = np.array(_field(document, "entries"), dtype=np.int64)
    if entries.shape != (m, n):
        raise BadFile(f"matrix declared {m}x{n} but entries have shape {entries.shape}")
    if entries.size and (entries.min() < 0 or entries.max() >= ctx.q):
        raise BadFile(f"matrix entries must lie in 0..{ctx.q - 1}")
    return ctx.field(entries)


def code_to_dict(code):
    return {
        "ctx": ctx_to_dict(code.ctx),
        "m": code.m,
        "n": code.n,
        "generators": [matrix_to_dict(G) for G in code.gens],
    }


def code_from_dict(document, ctx=None):
    ctx = ctx or ctx_from_dict(_field(document, "ctx"))
    m, n = int(_field(document, "m")), int(_field(document, "n"))
    gens = [matrix_from_dict(ctx, g) for g in _field(document, "generators")]
    return rankcode.code_new(ctx, m, n, gens)


def certificate_to_dict(cert):
    return {
        "ctx": ctx_to_dict(cert.ctx),
        "params": dict(cert.params),
        "A_sym": matrix_to_dict(cert.A_sym),
        "B_sym": matrix_to_dict(cert.B_sym),
        "P": matrix_to_dict(cert.P),
        "Q": matrix_to_dict(cert.Q),
        "source": code_to_dict(cert.source),
        "code": code_to_dict(cert.code),
    }


def certificate_from_dict(document):
    code_doc = _field(document, "code")
    ctx = ctx_from_dict(document.get("ctx") or _field(code_doc, "ctx"))
    params = {k: int(v) for k, v in _field(document, "params").items()}
    return SelfDualCertificate(
        ctx,
        params,
        matrix_from_dict(ctx, _field(document, "A_sym")),
        matrix_from_dict(ctx, _field(document, "B_sym")),
        matrix_from_dict(ctx, _field(document, "P")),
        matrix_from_dict(ctx, _field(document, "Q")),
        code_from_dict(_field(document, "source"), ctx),
        code_from_dict(code_doc, ctx),
    )


def load_code(path):
    return code_from_dict(load_json(path))


def save_code(code, path):
    save_json(code_to_dict(code), path)


def load_certificate(path):
    return certificate_from_dict(load_json(path))


def save_certificate(cert, path):
    save_json(certificate_to_dict(cert), path)
