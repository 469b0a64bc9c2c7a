# # Text streams, the command line and the oracle check
#
# Streams are tab-separated lines: time, ins or del, then three terms.
# Queries list one pattern per line, optionally preceded by an OUTPUT line
# fixing the answer column order.

import io
import os
import tempfile

from contbgp.bench import run_bench
from contbgp.cli import main
from contbgp.lineio import parse_query, parse_stream, write_update
from contbgp.model import query
from contbgp.synthetic import ground_bench_stream

q = parse_query(["OUTPUT ?Y ?X", "?X <knows> ?Y", "?Y <likes> \"tea\""])
print(q.output)

stream_text = """\
1\tins\t<ann>\t<knows>\t<bob>
2\tins\t<bob>\t<likes>\t"tea"
3\tins\t<cy>\t<knows>\t<bob>
4\tdel\t<bob>\t<likes>\t"tea"
"""
updates = parse_stream(stream_text.splitlines())
print("".join(write_update(u) for u in updates), end="")

# The same thing through the command line entry point.

with tempfile.TemporaryDirectory() as tmp:
    qp, sp = os.path.join(tmp, "q.txt"), os.path.join(tmp, "s.txt")
    with open(qp, "w") as fh:
        fh.write("OUTPUT ?Y ?X\n?X <knows> ?Y\n?Y <likes> \"tea\"\n")
    with open(sp, "w") as fh:
        fh.write(stream_text)
    out = io.StringIO()
    main(["run", "--query", qp, "--stream", sp, "--consolidated"], out)
    print(out.getvalue(), end="")

    out = io.StringIO()
    main(["bench", "--query", qp, "--stream", sp], out)
    print(out.getvalue(), end="")

# bench first replays the stream through the snapshot oracle and compares
# every step, then times the evaluator alone.

g = query(("a", "p", "b"), ("b", "q", "c"))
report = run_bench(g, ground_bench_stream(g, 200_000, seed=1))
print("".join(report.lines()), end="")
