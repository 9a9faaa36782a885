"""
Jinja environment for the text renderings. Booleans print as true/false and
three-valued checks as true/false/undetermined, matching the csv columns.
"""
import pathlib
from typing import Any, Optional

from jinja2 import Environment, FileSystemLoader, StrictUndefined

TEMPLATE_DIR = pathlib.Path(__file__).parent


def flag(value: Optional[bool]) -> str:
    if value is None:
        return "undetermined"
    return "true" if value else "false"


env = Environment(
    loader=FileSystemLoader(TEMPLATE_DIR),
    trim_blocks=True,
    lstrip_blocks=True,
    keep_trailing_newline=True,
    undefined=StrictUndefined,
)
env.filters["flag"] = flag


def load_jinja_template(template_name: str, **kwargs: Any) -> str:
    """Render one of the record templates next to this module."""
    return env.get_template(template_name).render(**kwargs)
