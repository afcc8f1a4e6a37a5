"""Walk one provision from dependency parse to atomic statements.

Run:  python3 demos/annotate_provision.py

The sentence coordinates two verbs ("select and promote"), three object
nouns, and three adjectives, so a single provision hides 2 x 3 x 3 = 18
atomic statements.  The script tags the parse, shows the component
spans, and prints every atomic statement the expansion recovers.
"""

from igkit import default_engine, expand, parse_conllu

PROVISION = """\
# sent_id = demo
1\tOn\ton\tADP\t_\t_\t3\tcase\t_\t_
2\tthe\tthe\tDET\t_\t_\t3\tdet\t_\t_
3\tbasis\tbasis\tNOUN\t_\t_\t24\tobl\t_\t_
4\tof\tof\tADP\t_\t_\t5\tcase\t_\t_
5\tproposals\tproposal\tNOUN\t_\t_\t3\tnmod\t_\t_
6\tsubmitted\tsubmit\tVERB\t_\t_\t5\tacl\t_\t_
7\tby\tby\tADP\t_\t_\t9\tcase\t_\t_
8\tStates\tstate\tNOUN\t_\t_\t9\tcompound\t_\t_
9\tParties\tparty\tNOUN\t_\t_\t6\tobl\t_\t_
10\t,\t,\tPUNCT\t_\t_\t24\tpunct\t_\t_
11\tin\tin\tADP\t_\t_\t12\tcase\t_\t_
12\taccordance\taccordance\tNOUN\t_\t_\t24\tobl\t_\t_
13\twith\twith\tADP\t_\t_\t14\tcase\t_\t_
14\tcriteria\tcriterion\tNOUN\t_\t_\t12\tnmod\t_\t_
15\tdefined\tdefine\tVERB\t_\t_\t14\tacl\t_\t_
16\tby\tby\tADP\t_\t_\t18\tcase\t_\t_
17\tthe\tthe\tDET\t_\t_\t18\tdet\t_\t_
18\tCommittee\tcommittee\tPROPN\t_\t_\t15\tobl\t_\t_
19\t,\t,\tPUNCT\t_\t_\t24\tpunct\t_\t_
20\tthe\tthe\tDET\t_\t_\t21\tdet\t_\t_
21\tCommittee\tcommittee\tPROPN\t_\t_\t24\tnsubj\t_\t_
22\tshall\tshall\tAUX\t_\t_\t24\taux\t_\t_
23\tperiodically\tperiodically\tADV\t_\t_\t24\tadvmod\t_\t_
24\tselect\tselect\tVERB\t_\t_\t0\troot\t_\t_
25\tand\tand\tCCONJ\t_\t_\t26\tcc\t_\t_
26\tpromote\tpromote\tVERB\t_\t_\t24\tconj\t_\t_
27\tnational\tnational\tADJ\t_\t_\t32\tamod\t_\t_
28\t,\t,\tPUNCT\t_\t_\t29\tpunct\t_\t_
29\tsubregional\tsubregional\tADJ\t_\t_\t27\tconj\t_\t_
30\tand\tand\tCCONJ\t_\t_\t31\tcc\t_\t_
31\tregional\tregional\tADJ\t_\t_\t27\tconj\t_\t_
32\tprogrammes\tprogramme\tNOUN\t_\t_\t24\tobj\t_\t_
33\t,\t,\tPUNCT\t_\t_\t34\tpunct\t_\t_
34\tprojects\tproject\tNOUN\t_\t_\t32\tconj\t_\t_
35\tand\tand\tCCONJ\t_\t_\t36\tcc\t_\t_
36\tactivities\tactivity\tNOUN\t_\t_\t32\tconj\t_\t_
37\tfor\tfor\tADP\t_\t_\t39\tcase\t_\t_
38\tthe\tthe\tDET\t_\t_\t39\tdet\t_\t_
39\tsafeguarding\tsafeguarding\tNOUN\t_\t_\t32\tnmod\t_\t_
40\tof\tof\tADP\t_\t_\t42\tcase\t_\t_
41\tthe\tthe\tDET\t_\t_\t42\tdet\t_\t_
42\theritage\theritage\tNOUN\t_\t_\t39\tnmod\t_\t_
43\t,\t,\tPUNCT\t_\t_\t24\tpunct\t_\t_
44\ttaking\ttake\tVERB\t_\t_\t24\tadvcl\t_\t_
45\tinto\tinto\tADP\t_\t_\t46\tcase\t_\t_
46\taccount\taccount\tNOUN\t_\t_\t44\tobl\t_\t_
47\tthe\tthe\tDET\t_\t_\t49\tdet\t_\t_
48\tspecial\tspecial\tADJ\t_\t_\t49\tamod\t_\t_
49\tneeds\tneed\tNOUN\t_\t_\t44\tobj\t_\t_
50\tof\tof\tADP\t_\t_\t52\tcase\t_\t_
51\tdeveloping\tdeveloping\tADJ\t_\t_\t52\tamod\t_\t_
52\tcountries\tcountry\tNOUN\t_\t_\t49\tnmod\t_\t_
53\t.\t.\tPUNCT\t_\t_\t24\tpunct\t_\t_
"""


def main() -> None:
    tree = parse_conllu(PROVISION)[0]
    print("provision:")
    print(" ", " ".join(token.surface for token in tree.tokens[:-1]) + ".")

    statement = default_engine().tag(tree, "regulative", statement_id="demo/s0")
    print("\ncomponent spans:")
    for span in statement.spans():
        print(f"  {span.label:<7} {span.text}")

    atomics = expand(statement)
    print(f"\natomic statements ({len(atomics)}):")
    for atomic in atomics:
        print(f"  {atomic.id:<12} {atomic.text}")


if __name__ == "__main__":
    main()
