"""From a parsed corpus to actor measures, then one expert correction.

Run:  python3 demos/review_loop.py

A three-sentence corpus is annotated end to end.  The automatic tagger
reads "through the Committee" as context, so the Committee only counts
once.  An expert flags that token as the indirect object instead; after
recomputation the Committee's visibility moves from 4/3 to 8/3 while
every other entity keeps its visibility (centralities shift, since the
Committee now sits on another edge).  The original machine labels stay
stored underneath the correction.
"""

import json
import tempfile
from pathlib import Path

from igkit import CorpusStore, PipelineConfig, recompute_metrics, run_pipeline

CONV = """\
1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_
2\tSecretariat\tsecretariat\tPROPN\t_\t_\t4\tnsubj\t_\t_
3\tshall\tshall\tAUX\t_\t_\t4\taux\t_\t_
4\treview\treview\tVERB\t_\t_\t0\troot\t_\t_
5\tthe\tthe\tDET\t_\t_\t6\tdet\t_\t_
6\treport\treport\tNOUN\t_\t_\t4\tobj\t_\t_
7\tthrough\tthrough\tADP\t_\t_\t9\tcase\t_\t_
8\tthe\tthe\tDET\t_\t_\t9\tdet\t_\t_
9\tCommittee\tcommittee\tPROPN\t_\t_\t4\tobl\t_\t_
10\t.\t.\tPUNCT\t_\t_\t4\tpunct\t_\t_

1\tThe\tthe\tDET\t_\t_\t3\tdet\t_\t_
2\tState\tstate\tPROPN\t_\t_\t3\tcompound\t_\t_
3\tParty\tparty\tPROPN\t_\t_\t5\tnsubj\t_\t_
4\tshall\tshall\tAUX\t_\t_\t5\taux\t_\t_
5\tsubmit\tsubmit\tVERB\t_\t_\t0\troot\t_\t_
6\tthe\tthe\tDET\t_\t_\t7\tdet\t_\t_
7\treport\treport\tNOUN\t_\t_\t5\tobj\t_\t_
8\tto\tto\tADP\t_\t_\t10\tcase\t_\t_
9\tthe\tthe\tDET\t_\t_\t10\tdet\t_\t_
10\tCommittee\tcommittee\tPROPN\t_\t_\t5\tobl\t_\t_
11\t.\t.\tPUNCT\t_\t_\t5\tpunct\t_\t_

1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_
2\tFund\tfund\tPROPN\t_\t_\t4\tnsubj\t_\t_
3\tmust\tmust\tAUX\t_\t_\t4\taux\t_\t_
4\tinclude\tinclude\tVERB\t_\t_\t0\troot\t_\t_
5\tthe\tthe\tDET\t_\t_\t6\tdet\t_\t_
6\tinventory\tinventory\tNOUN\t_\t_\t4\tobj\t_\t_
7\t.\t.\tPUNCT\t_\t_\t4\tpunct\t_\t_
"""

GOLD_TYPES = {
    "conv/s0": "regulative",
    "conv/s1": "regulative",
    "conv/s2": "constitutive",
}


def show(report, note):
    print(f"\nvisibility / centrality ({note}):")
    for row in report.rows:
        if row.mentions:
            print(f"  {row.entity:<28} {str(row.visibility):>5}"
                  f"  {row.centrality:.3f}")


def main() -> None:
    with tempfile.TemporaryDirectory() as scratch:
        root = Path(scratch)
        source = root / "source"
        source.mkdir()
        (source / "conv.conllu").write_text(CONV, encoding="utf-8")
        gold_types = root / "gold_types.json"
        gold_types.write_text(json.dumps(GOLD_TYPES), encoding="utf-8")

        corpus = root / "corpus"
        manifest = run_pipeline(
            PipelineConfig(
                corpus_dir=corpus,
                source_dir=source,
                gold_types=gold_types,
                stages=("ingest", "classify", "tag", "split", "graph", "metrics"),
            )
        )
        for stage in manifest["order"]:
            print(f"{stage}: {manifest['stages'][stage]['counts']}")

        store = CorpusStore(corpus)
        show(recompute_metrics(store), "automatic labels")

        print("\nexpert: token 9 of conv/s0 is the recipient, not context")
        record = store.update_statement(
            "conv", "conv/s0", labels={9: "B-ind"},
            note="recipient, not context",
        )
        print(f"  status: {record.status}")
        print(f"  machine label kept underneath: {record.labels[9]}")

        show(recompute_metrics(store), "after the correction")


if __name__ == "__main__":
    main()
