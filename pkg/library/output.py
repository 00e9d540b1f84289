# khavinson-constants - sharp gradient constants for hyperbolic harmonic functions on the unit ball
#
# Copyright (C) 2026  khavinson-constants contributors
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <https://www.gnu.org/licenses/>.

# Result writers. Output is a pure function of the document: sorted keys, repr floats,
# no timestamps, so identical runs give byte-identical files.
#
# JSON: {"config": ..., "results": [...], "diagnostics": {...}}
# CSV:  a '#' header block (config echo, then diagnostics), then one row per result

import io
import json
import math
import os
import sys
from dataclasses import dataclass, field
from enum import Enum
from typing import List

import numpy as np
import pandas as pd

import library.config as config
from library.errors import ConfigError
from library.log import logger

FORMATS = ("json", "csv")


@dataclass
class ResultDocument:
    config: dict
    results: List[dict]
    diagnostics: dict = field(default_factory=dict)


def plain(o):
    """numpy scalars, arrays and enums as JSON values; NaN and infinities as strings"""
    if isinstance(o, dict):
        return {str(k): plain(v) for k, v in o.items()}
    if isinstance(o, (list, tuple)):
        return [plain(v) for v in o]
    if isinstance(o, np.ndarray):
        return [plain(v) for v in o.tolist()]
    if isinstance(o, Enum):
        return o.value
    if isinstance(o, (bool, np.bool_)):
        return bool(o)
    if isinstance(o, (int, np.integer)):
        return int(o)
    if isinstance(o, (float, np.floating)):
        o = float(o)
        return o if math.isfinite(o) else repr(o)
    return o


def render_json(document: ResultDocument) -> str:
    payload = {"config": document.config, "results": document.results, "diagnostics": document.diagnostics}
    return json.dumps(plain(payload), sort_keys=True, indent=2) + "\n"


def _header_value(value) -> str:
    value = plain(value)
    return value if isinstance(value, str) else json.dumps(value, sort_keys=True)


def render_csv(document: ResultDocument) -> str:
    stream = io.StringIO()
    for section in ("config", "diagnostics"):
        for key, value in sorted(getattr(document, section).items()):
            stream.write("# %s.%s: %s\n" % (section, key, _header_value(value)))
    table = pd.DataFrame([plain(row) for row in document.results])
    table.to_csv(stream, index=False, lineterminator="\n", float_format="%.17g")
    return stream.getvalue()


def resolve_out_file(out_file: str) -> str:
    """A relative path is taken in the output directory (KHAVINSON_OUTPUT_DIR or output.DIRECTORY)"""
    if os.path.isabs(out_file):
        return out_file
    return os.path.join(config.output_directory(), out_file)


def write_document(document: ResultDocument, fmt: str = None, out_file: str = None):
    fmt = fmt or config.CONFIG_DATA['output']['FORMAT']
    if fmt not in FORMATS:
        raise ConfigError("output format must be one of %s, got '%s'" % (", ".join(FORMATS), fmt))
    text = render_json(document) if fmt == "json" else render_csv(document)
    if not out_file:
        sys.stdout.write(text)
        return
    path = resolve_out_file(out_file)
    try:
        directory = os.path.dirname(path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(path, "wt", encoding='utf8', newline="") as stream:
            stream.write(text)
    except OSError as e:
        raise ConfigError("Cannot write output file %s: %s" % (path, e))
    logger.info("Results written to %s" % path)
