import pathlib

import pytest

from ltcat.vocab import load_seed_vocabularies

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def vocabs():
    return load_seed_vocabularies()


@pytest.fixture(scope="session")
def annie_xml() -> str:
    return (FIXTURES / "annie.xml").read_text(encoding="utf-8")


@pytest.fixture()
def annie_record(vocabs, annie_xml):
    from ltcat.serialization import parse_xml
    from ltcat.validation import validate_import

    record, report = validate_import(parse_xml(annie_xml), vocabs)
    assert record is not None, report.as_text()
    return record


@pytest.fixture()
def fresh_store(tmp_path, vocabs):
    from ltcat.store import Store

    return Store(tmp_path / "data", vocabularies=vocabs)
