# Copyright 2021 The repeaterlab authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""
Machine-readable sweep and simulation reports.

CSV files carry a fixed column set.  Numbers use 17 significant digits
so that every value re-parses to the identical double.  JSON documents
carry the format version, the resolved configuration and the records.
"""

from dataclasses import dataclass, asdict
import io
import json
import math

from repeaterlab.file_replace import write_text
from repeaterlab.units import three_sig_figs


REPORT_FORMAT_VERSION = '1'
SWEEP_COLUMNS = ('length_km', 'rate', 'n_opt', 'm_opt', 'ub', 'lb', 'lossy_lb',
                 'decoh_lb', 'plob', 'feasible')
RATE_COLUMNS = ('rate', 'ub', 'lb', 'lossy_lb', 'decoh_lb', 'plob')
CONFIG_EXCLUDE = ('workers', 'output')


@dataclass(frozen=True)
class SweepRecord:
    """One sweep row: the exact envelope, every bound and PLOB at one length."""
    length_km: float
    rate: float
    n_opt: int
    m_opt: int
    ub: float
    lb: float
    lossy_lb: float
    decoh_lb: float
    plob: float
    feasible: bool
    beats_plob: bool = False
    cap_hit: bool = False

    def scaled(self, divisor):
        """Get the record with every rate divided by divisor."""
        d = asdict(self)
        for key in RATE_COLUMNS:
            d[key] = d[key] / divisor
        return SweepRecord(**d)


def sweep_record(point, summary):
    """Combine an envelope point with the bound summary at the same length.

    :param point: The :class:`repeaterlab.envelope.EnvelopePoint`.
    :param summary: The dict from :func:`repeaterlab.bounds.bound_summary`.
    """
    return SweepRecord(
        length_km=point.length_km,
        rate=point.rate,
        n_opt=point.n_opt,
        m_opt=point.m_opt,
        ub=summary['ub'],
        lb=summary['lb'],
        lossy_lb=summary['lossy_lb'],
        decoh_lb=summary['decoh_lb'],
        plob=point.plob,
        feasible=bool(summary['feasible']),
        beats_plob=point.beats_plob,
        cap_hit=point.cap_hit,
    )


def format_value(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return '%d' % value
    return '%.17g' % value


def parse_value(column, text):
    if column == 'feasible':
        return text == 'true'
    if column in ('n_opt', 'm_opt'):
        return int(text)
    return float(text)


def sweep_csv(records):
    """Format records as CSV text with the fixed header."""
    f = io.StringIO()
    f.write(','.join(SWEEP_COLUMNS) + '\n')
    for r in records:
        f.write(','.join(format_value(getattr(r, c)) for c in SWEEP_COLUMNS) + '\n')
    return f.getvalue()


def read_sweep_csv(text):
    """Parse CSV text written by :func:`sweep_csv`.

    :return: The list of dicts, one per row.
    :raise ValueError: If the header does not match.
    """
    lines = [x for x in text.splitlines() if x]
    if not lines or tuple(lines[0].split(',')) != SWEEP_COLUMNS:
        raise ValueError('unsupported sweep CSV header')
    rows = []
    for line in lines[1:]:
        fields = line.split(',')
        rows.append(dict((c, parse_value(c, t)) for c, t in zip(SWEEP_COLUMNS, fields)))
    return rows


def report_config(cfg):
    """Get the JSON-serializable configuration of a run."""
    return dict((k, v) for k, v in sorted(cfg.values.items()) if k not in CONFIG_EXCLUDE)


def _finite_or_none(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return dict((k, _finite_or_none(v)) for k, v in obj.items())
    if isinstance(obj, (list, tuple)):
        return [_finite_or_none(v) for v in obj]
    return obj


def to_json(obj):
    """Format obj as deterministic JSON text.

    NaN and inf, such as inapplicable bounds, are written as null.
    """
    return json.dumps(_finite_or_none(obj), indent=2, sort_keys=True, allow_nan=False) + '\n'


def sweep_json(records, cfg, extra=None):
    doc = {
        'format_version': REPORT_FORMAT_VERSION,
        'columns': list(SWEEP_COLUMNS),
        'config': report_config(cfg),
        'records': [asdict(r) for r in records],
    }
    if extra:
        doc.update(extra)
    return to_json(doc)


def write_sweep(records, cfg, extra=None):
    """Write the sweep to cfg.output in cfg.format."""
    if cfg.format == 'json':
        text = sweep_json(records, cfg, extra)
    else:
        text = sweep_csv(records)
    write_text(cfg.output, text)


def fields_text(fields):
    """Format (name, value, units) tuples as aligned 'name: value' lines.

    Values use 17 significant digits, followed by a three significant
    figure display when units are given.
    """
    width = max([len(name) for name, _, _ in fields] + [1])
    lines = []
    for name, value, units in fields:
        if value is None:
            text = 'n/a'
        elif isinstance(value, str):
            text = value
        else:
            text = format_value(value)
            if units and not isinstance(value, bool) and math.isfinite(value):
                text += '  (%s)' % three_sig_figs(value, units)
        lines.append('%s: %s' % (name.ljust(width), text))
    return '\n'.join(lines) + '\n'


def z_score(estimate, stderr, analytic):
    """(estimate - analytic) / stderr.

    With zero stderr, 0 when estimate equals analytic, otherwise NaN.
    """
    if stderr > 0.0:
        return (estimate - analytic) / stderr
    return 0.0 if estimate == analytic else math.nan
