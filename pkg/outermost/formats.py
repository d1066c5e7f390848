"""
Report writers
"""
import csv
import datetime
import io
import json
import os
import tempfile
from fractions import Fraction

from .config import VERSION
from .coxeter import to_dot

SAFE_INT = 2**53


class Formatters:
    _registry = {}

    @classmethod
    def register(cls, name, fn):
        cls._registry[name] = fn
    @classmethod
    def get(cls, name):
        try:
            return cls._registry[name]
        except KeyError:
            raise ValueError(f'unknown format {name!r}; choose from {sorted(cls._registry)}') from None
    @classmethod
    def names(cls):
        return tuple(sorted(cls._registry))


def formatter(name):
    """
    Formatter decorator
    """
    def _fn(fn):
        Formatters.register(name, fn)
        return fn
    return _fn


def jsonable(obj):
    """
    Exact values as JSON-safe data: rationals and large integers become strings
    >>> jsonable({'q': Fraction(1, 3), 'n': 2**60, 'v': (1, Fraction(2))})
    {'q': '1/3', 'n': '1152921504606846976', 'v': [1, 2]}
    """
    if isinstance(obj, bool) or obj is None or isinstance(obj, (str, float)):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) >= SAFE_INT else obj
    if isinstance(obj, Fraction):
        return jsonable(obj.numerator) if obj.denominator == 1 else str(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(x) for x in obj]
    if hasattr(obj, 'as_dict'):
        return jsonable(obj.as_dict())
    raise TypeError(f'cannot serialize {type(obj).__name__}')


def header(command, **parameters):
    return {
        'tool': 'outermost',
        'version': VERSION,
        'command': command,
        'timestamp': datetime.datetime.now(datetime.timezone.utc).isoformat(),
        'parameters': jsonable(parameters),
    }


@formatter('json')
def format_json(body, head=None):
    """
    {"header": ..., "body": ...} with a deterministic body
    >>> print(format_json({'b': 1, 'a': [1, 2]}))
    {
      "body": {
        "a": [
          1,
          2
        ],
        "b": 1
      }
    }
    """
    doc = {'body': jsonable(body)}
    if head is not None:
        doc['header'] = head
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)


@formatter('csv')
def format_csv(rows, head=None):
    """
    Rows of flat dicts as CSV, columns in first-row order, after the header
    as '#' comment lines
    >>> print(format_csv([{'x': 1, 'y': '1/2'}, {'x': 2, 'y': '3'}]), end='')
    x,y
    1,1/2
    2,3
    >>> print(format_csv([{'x': 1}], {'tool': 'outermost', 'parameters': {'k': 2}}), end='')
    # tool: outermost
    # parameters: {"k": 2}
    x
    1
    """
    rows = [jsonable(r) for r in rows]
    out = io.StringIO()
    for key, value in (head or {}).items():
        if not isinstance(value, str):
            value = json.dumps(value, sort_keys=True)
        out.write(f'# {key}: {value}\n')
    if rows:
        writer = csv.DictWriter(out, fieldnames=list(rows[0]), lineterminator='\n', extrasaction='ignore')
        writer.writeheader()
        writer.writerows(rows)
    return out.getvalue()


@formatter('dot')
def format_dot(diagram, head=None):
    return to_dot(diagram) + '\n'


def render(name, payload, head=None):
    return Formatters.get(name)(payload, head)


def write_atomic(path, text):
    """
    Replace the file at path with text in one step
    """
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix='.tmp-', suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, 'wt', encoding='utf-8') as f:
            f.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise
