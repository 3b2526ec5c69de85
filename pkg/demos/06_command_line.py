"""
Command line reports
====================

The same computations are available as ``bohrradius <command>``; here the
entry point is called in-process and the CSV output is parsed back.
"""

import csv
import io

from bohrradius.cli import main

for argv in (["beta", "--n", "1..4", "--lambda", "1", "1.5"],
             ["sidon", "--m", "1..3", "--n", "2", "--budget", "400"],
             ["table", "--n", "2..6", "--lambda", "1.5"]):
    out = io.StringIO()
    code = main(argv, out)
    print("$ bohrradius", " ".join(argv), "->", code)
    for row in csv.DictReader(io.StringIO(out.getvalue())):
        print("  ", dict(row))
