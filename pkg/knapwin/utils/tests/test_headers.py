#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################

"""
Test that headers are on all files
"""
# Standard libs
import os
from pathlib import Path

# Installed libs
import pytest

yaml = pytest.importorskip("yaml", reason="pyyaml not available")
addheader = pytest.importorskip("addheader.add", reason="addheader not available")


@pytest.fixture(name="package_root")
def package_root_fixture():
    """Determine package root."""
    # User-defined libs
    import knapwin

    return Path(knapwin.__file__).parent


@pytest.fixture(name="patterns")
def patterns_fixture(package_root):
    """Grab glob patterns from config file."""
    conf_file = package_root.parent / ".addheader.yml"
    if not conf_file.exists():
        pytest.skip(f"Cannot load configuration file {conf_file}; not a development install")
    with open(conf_file, encoding="utf-8") as f:
        conf_data = yaml.safe_load(f)
    return conf_data["patterns"]


def test_headers(package_root, patterns):
    """Every nonempty source file starts with the license header"""
    ff = addheader.FileFinder(package_root, glob_patterns=patterns)
    _, missing_header = addheader.detect_files(ff)
    # ignore empty files
    nonempty_missing_header = [p for p in missing_header if p.stat().st_size > 0]
    if nonempty_missing_header:
        pfx = str(package_root.resolve())
        file_list = ", ".join(str(p)[len(pfx) + 1 :] for p in nonempty_missing_header)
        print(f"Missing headers from files under '{pfx}{os.path.sep}': {file_list}")
    assert len(nonempty_missing_header) == 0
