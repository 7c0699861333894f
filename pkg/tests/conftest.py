import os
from pathlib import Path

import pytest

from lnemlc.dataset import parse_arff

# Real MULAN train/test splits are looked up here (override with
# LNEMLC_DATA_DIR).  Expected filenames: <name>-train.arff / <name>-test.arff
# for scene (6 labels), emotions (6) and yeast (14).
DATA_DIR = Path(os.environ.get("LNEMLC_DATA_DIR", Path(__file__).resolve().parents[1] / "data"))

LABEL_COUNTS = {"scene": 6, "emotions": 6, "yeast": 14}


def load_mulan_split(name: str):
    train_path = DATA_DIR / f"{name}-train.arff"
    test_path = DATA_DIR / f"{name}-test.arff"
    if not train_path.exists() or not test_path.exists():
        pytest.skip(
            f"MULAN {name} split not available (expected {train_path} and "
            f"{test_path}; this sandbox has no dataset network access)"
        )
    labels = LABEL_COUNTS[name]
    return (
        parse_arff(train_path.read_text(), labels),
        parse_arff(test_path.read_text(), labels),
    )
