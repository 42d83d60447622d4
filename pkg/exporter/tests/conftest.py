import pytest

HEADER = (
    "id\ttitle\tsection_header\tprev_context\tsentence\tnext_context\t"
    "filler1\tfiller2\tfiller3\tfiller4\tfiller5"
)

ROWS = [
    "a1\tCook Rice\tSteps\tRinse it.\tAdd two cups of ______ to the pot.\tBoil it.\t"
    "water\tbroth\tMy book\tgalaxy\tThe table",
    "a2\tBake Bread\tProofing\tKnead the dough.\tCover the bowl with a damp ______ now.\tWait an hour.\t"
    "towel\tcloth\tsorrow\tcomet\tlinen",
]


@pytest.fixture
def dataset_path(tmp_path):
    path = tmp_path / "data.tsv"
    path.write_text("\n".join([HEADER, *ROWS]) + "\n", encoding="utf-8")
    return path


@pytest.fixture
def oov_dataset_path(tmp_path):
    row = ROWS[0].replace("water", "zzzunknownzzz")
    path = tmp_path / "oov.tsv"
    path.write_text("\n".join([HEADER, row]) + "\n", encoding="utf-8")
    return path
