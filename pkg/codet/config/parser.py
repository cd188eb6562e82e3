"""Parser for config files and --set overrides, built on Lark."""

from pathlib import Path

from lark import Lark, Token, Transformer, v_args
from lark.exceptions import UnexpectedInput, VisitError

from codet.errors import ConfigParseError

ConfigScalar = int | float | bool | str
ConfigValue = ConfigScalar | list[ConfigScalar]

_GRAMMAR_PATH = Path(__file__).parent / "grammar.lark"


class _DuplicateKey(Exception):
    def __init__(self, key: Token):
        self.key = key


@v_args(inline=True)
class ConfigTransformer(Transformer):
    """Transforms the Lark parse tree into a dict of config values."""

    def start(self, *entries: tuple[Token, ConfigValue]) -> dict[str, ConfigValue]:
        values: dict[str, ConfigValue] = {}
        for name, value in entries:
            if str(name) in values:
                raise _DuplicateKey(name)
            values[str(name)] = value
        return values

    def entry(self, name: Token, value: ConfigValue) -> tuple[Token, ConfigValue]:
        return name, value

    def number(self, token: Token) -> int | float:
        text = str(token)
        if "." in text or "e" in text.lower():
            return float(text)
        return int(text)

    def string(self, token: Token) -> str:
        return str(token)[1:-1]

    def word(self, token: Token) -> bool | str:
        text = str(token)
        if text == "true":
            return True
        if text == "false":
            return False
        return text

    def array(self, *items: ConfigScalar) -> list[ConfigScalar]:
        return list(items)


def _create_parser() -> Lark:
    """Create and return the Lark parser."""
    return Lark(_GRAMMAR_PATH.read_text(), start="start", parser="lalr")


_parser: Lark | None = None
_transformer = ConfigTransformer()


def parse_config(source: str) -> dict[str, ConfigValue]:
    """Parse config text into a dict of values."""
    global _parser
    if _parser is None:
        _parser = _create_parser()
    try:
        tree = _parser.parse(source + "\n")
    except UnexpectedInput as e:
        raise ConfigParseError(_describe(e), e.line, e.column) from e
    try:
        values: dict[str, ConfigValue] = _transformer.transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, _DuplicateKey):
            key = e.orig_exc.key
            raise ConfigParseError(f"duplicate key '{key}'", key.line, key.column) from e
        raise
    return values


def _describe(error: UnexpectedInput) -> str:
    # the first line of Lark's message names the offending token
    return str(error).strip().splitlines()[0]


def load_config_file(path: Path) -> dict[str, ConfigValue]:
    """Read and parse a config file."""
    try:
        source = path.read_text()
    except OSError as e:
        raise ConfigParseError(f"cannot read {path}: {e.strerror}") from e
    return parse_config(source)


def parse_override(text: str) -> tuple[str, ConfigValue]:
    """Parse one `key=value` override with the config-file syntax."""
    if "=" not in text:
        raise ConfigParseError(f"override '{text}' is not of the form key=value")
    values = parse_config(text)
    if len(values) != 1:
        raise ConfigParseError(f"override '{text}' must set exactly one key")
    ((key, value),) = values.items()
    return key, value
