#################################################################################
# knapwin - streaming representative subset selection under d-knapsack
# constraints over sliding windows.
#
# Distributed under the BSD 3-clause license. See LICENSE.md for the full
# license text and COPYRIGHT.md for copyright information.
#################################################################################


def test_import_main_package():
    # User-defined libs
    import knapwin

    assert knapwin.RELEASE.startswith(knapwin.VERSION)


def test_import_cli():
    # User-defined libs
    from knapwin.harness.cli import main

    assert callable(main)
