"""
File formats shared by every command.

Scalars are JSON integers, "p/q" strings for non-integral rationals, or the
tokens "-inf" / "+inf" for the zero of the semiring. Matrices are objects
{"semiring", "rows", "cols", "data"}; CSV matrices use the same tokens.
"""
import csv
import dataclasses
import io
import json
import os
from enum import Enum
from fractions import Fraction
import logging
log = logging.getLogger(__name__)

from core.errors import SchemaError
from modules.Algebra.semiring import Semiring, TropScalar, Interval, coerce
from modules.Algebra.tropmat import TropMatrix, TropVector, IntervalMatrix

def rational(value):
    """
    Rational to JSON: integers stay numbers, the rest become "p/q".
    """
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return '%d/%d' % (value.numerator, value.denominator)

def parse_rational(token, what='value'):
    if isinstance(token, bool) or isinstance(token, float):
        raise SchemaError('%s must be an integer or a "p/q" string, got %r' % (what, token))
    try:
        return Fraction(token)
    except (TypeError, ValueError, ZeroDivisionError):
        raise SchemaError('%s is not a rational: %r' % (what, token))

def scalar(tag, value):
    if value is None:
        return tag.bottom_token
    if tag is Semiring.BOOLEAN:
        return 1
    return rational(value)

def parse_scalar(tag, token, what='entry'):
    if isinstance(token, float):
        raise SchemaError('%s must be exact, got the float %r' % (what, token))
    if tag is Semiring.BOOLEAN and isinstance(token, bool):
        return coerce(tag, token)
    try:
        return coerce(tag, token)
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise SchemaError('bad %s %r: %s' % (what, token, e))

def parse_tag(name):
    try:
        return Semiring(name)
    except ValueError:
        raise SchemaError('unknown semiring %r (expected one of %s)' %
                          (name, ', '.join(t.value for t in Semiring)))

def require(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise SchemaError('missing field %r' % key)
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError('field %r has the wrong type' % key)
    return value

def matrix(A):
    return {
        'semiring': A.tag.value,
        'rows': A.rows,
        'cols': A.cols,
        'data': [[scalar(A.tag, v) for v in row] for row in A.data],
    }

def _parse_grid(tag, data, rows, cols, what):
    if not isinstance(data, list) or len(data) != rows:
        raise SchemaError('%s must have %d rows' % (what, rows))
    grid = []
    for i, row in enumerate(data):
        if not isinstance(row, list) or len(row) != cols:
            raise SchemaError('%s row %d must have %d entries' % (what, i, cols))
        grid.append(tuple(parse_scalar(tag, v, '%s[%d][%d]' % (what, i, j))
                          for j, v in enumerate(row)))
    return tuple(grid)

def parse_matrix(obj):
    tag = parse_tag(require(obj, 'semiring', str))
    rows = require(obj, 'rows', int)
    cols = require(obj, 'cols', int)
    if rows < 1 or cols < 1:
        raise SchemaError('matrix dimensions must be positive')
    return TropMatrix(tag, _parse_grid(tag, require(obj, 'data'), rows, cols, 'data'))

def vector(x):
    return {
        'semiring': x.tag.value,
        'data': [scalar(x.tag, v) for v in x.data],
    }

def parse_vector(obj, tag=None):
    """
    A vector object, or a bare list when the tag is known.
    """
    if isinstance(obj, list):
        if tag is None:
            raise SchemaError('bare vector lists need a semiring')
        data = obj
    else:
        tag = parse_tag(require(obj, 'semiring', str))
        data = require(obj, 'data', list)
    if not data:
        raise SchemaError('vectors must not be empty')
    return TropVector(tag, tuple(parse_scalar(tag, v, 'data[%d]' % i) for i, v in enumerate(data)))

def interval(a):
    return {
        'semiring': a.tag.value,
        'lo': scalar(a.tag, a.lo.value),
        'hi': scalar(a.tag, a.hi.value),
    }

def parse_interval(obj):
    tag = parse_tag(require(obj, 'semiring', str))
    lo = parse_scalar(tag, require(obj, 'lo'), 'lo')
    hi = parse_scalar(tag, require(obj, 'hi'), 'hi')
    try:
        return Interval(TropScalar(lo, tag), TropScalar(hi, tag))
    except ValueError as e:
        raise SchemaError(str(e))

def interval_matrix(A):
    return {
        'semiring': A.tag.value,
        'rows': A.lo.rows,
        'cols': A.lo.cols,
        'lo': [[scalar(A.tag, v) for v in row] for row in A.lo.data],
        'hi': [[scalar(A.tag, v) for v in row] for row in A.hi.data],
    }

def parse_interval_matrix(obj):
    tag = parse_tag(require(obj, 'semiring', str))
    rows = require(obj, 'rows', int)
    cols = require(obj, 'cols', int)
    lo = TropMatrix(tag, _parse_grid(tag, require(obj, 'lo'), rows, cols, 'lo'))
    hi = TropMatrix(tag, _parse_grid(tag, require(obj, 'hi'), rows, cols, 'hi'))
    try:
        return IntervalMatrix(lo, hi)
    except ValueError as e:
        raise SchemaError(str(e))

def mask_key(mask):
    return '0b' + format(mask, 'b')

def parse_mask(key, n):
    try:
        mask = int(key, 0)
    except (TypeError, ValueError):
        raise SchemaError('subset key %r is not a bitmask' % key)
    if mask < 0 or mask >= 1 << n:
        raise SchemaError('subset key %r outside a ground set of size %d' % (key, n))
    return mask

def load(path):
    """
    Parse a JSON file; all decoding problems surface as SchemaError.
    """
    with open(path) as stream:
        try:
            return json.load(stream)
        except ValueError as e:
            raise SchemaError('%s: invalid JSON (%s)' % (path, e))

def read_matrix(path, tag=None):
    """
    Matrix from a JSON file, or from a CSV file of tokens (max-plus unless a
    tag is given).
    """
    if os.path.splitext(path)[1].lower() == '.csv':
        tag = tag or Semiring.MAX_PLUS
        with open(path, newline='') as stream:
            rows = [row for row in csv.reader(stream) if row]
        if not rows:
            raise SchemaError('%s: empty matrix' % path)
        cols = len(rows[0])
        return TropMatrix(tag, _parse_grid(tag, [[v.strip() for v in row] for row in rows],
                                           len(rows), cols, path))

    A = parse_matrix(load(path))
    if tag is not None and A.tag is not tag:
        raise SchemaError('%s: expected a %s matrix, got %s' % (path, tag.value, A.tag.value))
    return A

def dumps(obj):
    """
    Deterministic JSON text.
    """
    return json.dumps(obj, sort_keys=True, indent=2) + '\n'

def csv_text(header, rows):
    stream = io.StringIO()
    writer = csv.writer(stream, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([rational(v) if isinstance(v, Fraction) else v for v in row])
    return stream.getvalue()

def encode(obj):
    """
    JSON form of a result or witness: tropical objects use their file
    formats, dataclasses become objects, sets become sorted lists.
    """
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return rational(obj)
    if isinstance(obj, TropScalar):
        return {'semiring': obj.tag.value, 'value': scalar(obj.tag, obj.value)}
    if isinstance(obj, TropVector):
        return vector(obj)
    if isinstance(obj, TropMatrix):
        return matrix(obj)
    if isinstance(obj, Interval):
        return interval(obj)
    if isinstance(obj, IntervalMatrix):
        return interval_matrix(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return dict((str(k), encode(v)) for k, v in obj.items())
    if isinstance(obj, (set, frozenset)):
        return [encode(v) for v in sorted(obj)]
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return dict((f.name, encode(getattr(obj, f.name))) for f in dataclasses.fields(obj))
    return str(obj)
