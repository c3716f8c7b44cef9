"""BCP-47 language tag well-formedness (syntax only, no registry lookup)."""

from __future__ import annotations

import re

_ALPHANUM = "[0-9A-Za-z]"
_SINGLETON = "[0-9A-WY-Za-wy-z]"

_LANGTAG = (
    r"(?:[A-Za-z]{2,3}(?:-[A-Za-z]{3}){0,3}|[A-Za-z]{4,8})"  # language (+extlang)
    r"(?:-[A-Za-z]{4})?"                                      # script
    r"(?:-(?:[A-Za-z]{2}|[0-9]{3}))?"                         # region
    rf"(?:-(?:{_ALPHANUM}{{5,8}}|[0-9]{_ALPHANUM}{{3}}))*"    # variants
    rf"(?:-{_SINGLETON}(?:-{_ALPHANUM}{{2,8}})+)*"            # extensions
    rf"(?:-[Xx](?:-{_ALPHANUM}{{1,8}})+)?"                    # private use
)
_PRIVATE_ONLY = rf"[Xx](?:-{_ALPHANUM}{{1,8}})+"

# Irregular tags grandfathered by RFC 5646; syntactically valid by fiat.
_GRANDFATHERED = {
    "en-gb-oed", "i-ami", "i-bnn", "i-default", "i-enochian", "i-hak",
    "i-klingon", "i-lux", "i-mingo", "i-navajo", "i-pwn", "i-tao",
    "i-tay", "i-tsu", "sgn-be-fr", "sgn-be-nl", "sgn-ch-de",
}

_TAG_RE = re.compile(rf"^(?:{_LANGTAG}|{_PRIVATE_ONLY})$")


def is_well_formed(tag: str) -> bool:
    """True iff ``tag`` is a syntactically valid BCP-47 language tag."""
    if not tag or not isinstance(tag, str):
        return False
    if tag.lower() in _GRANDFATHERED:
        return True
    return bool(_TAG_RE.match(tag))


def primary_subtag(tag: str) -> str:
    """Lowercased primary language subtag ("en-GB" -> "en")."""
    return tag.split("-", 1)[0].lower()
