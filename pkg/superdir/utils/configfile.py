"""
Flat 'key = value' configuration files with '#' comments

Tokenizing is done by the python-dotenv parser; this module adds strict
checking, so malformed lines, unknown keys and unparsable values fail with
their line number.
"""
from dotenv.parser import parse_stream

from superdir.exceptions import DataError, SuperdirError


def _line_number(original):
    """Line of the first non-blank character; the parser marks the start of preceding blank lines"""
    text = original.string
    return original.line + text[:len(text) - len(text.lstrip())].count('\n')


def read_config_file(path, converters):
    """Parse a config file into {key: value}; converters maps each allowed key to its parser"""
    try:
        with open(path) as stream:
            bindings = list(parse_stream(stream))
    except FileNotFoundError:
        raise DataError('config file not found', path=path)

    values = {}
    for binding in bindings:
        line = _line_number(binding.original)
        if binding.error:
            raise DataError(f'cannot parse {binding.original.string.strip()!r}', line=line, path=path)
        # Blank lines and comments
        if binding.key is None:
            continue
        key = binding.key.strip().lower()
        if key not in converters:
            raise DataError(f'unknown key {key!r}', line=line, path=path)
        if binding.value is None or not binding.value.strip():
            raise DataError(f'key {key!r} has no value', line=line, path=path)
        if key in values:
            raise DataError(f'key {key!r} given twice', line=line, path=path)
        try:
            values[key] = converters[key](binding.value.strip())
        except (ValueError, SuperdirError) as e:
            raise DataError(f'bad value for {key!r}: {e}', line=line, path=path) from e
    return values
