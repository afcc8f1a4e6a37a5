"""Shared dependency-parse fixtures.

Each fixture is a hand-checked CoNLL-U block; tests freeze expected labels
and spans against these parses.
"""

import pytest

from igkit.conllu import parse_conllu
from igkit.tagger import default_engine

# "The employee is unable to work."  (constitutive)
UNABLE = """\
# sent_id = unable
# text = The employee is unable to work.
1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_
2\temployee\temployee\tNOUN\t_\t_\t4\tnsubj\t_\t_
3\tis\tbe\tAUX\t_\t_\t4\tcop\t_\t_
4\tunable\tunable\tADJ\t_\t_\t0\troot\t_\t_
5\tto\tto\tPART\t_\t_\t6\tmark\t_\t_
6\twork\twork\tVERB\t_\t_\t4\txcomp\t_\t_
7\t.\t.\tPUNCT\t_\t_\t4\tpunct\t_\t_
"""

# "State Party may submit a request for financial assistance to the
#  Committee through an online form once a year."  (regulative)
SUBMIT = """\
# sent_id = submit
# text = State Party may submit a request for financial assistance to the Committee through an online form once a year.
1\tState\tstate\tNOUN\t_\t_\t2\tcompound\t_\t_
2\tParty\tparty\tNOUN\t_\t_\t4\tnsubj\t_\t_
3\tmay\tmay\tAUX\t_\t_\t4\taux\t_\t_
4\tsubmit\tsubmit\tVERB\t_\t_\t0\troot\t_\t_
5\ta\ta\tDET\t_\t_\t6\tdet\t_\t_
6\trequest\trequest\tNOUN\t_\t_\t4\tobj\t_\t_
7\tfor\tfor\tADP\t_\t_\t9\tcase\t_\t_
8\tfinancial\tfinancial\tADJ\t_\t_\t9\tamod\t_\t_
9\tassistance\tassistance\tNOUN\t_\t_\t6\tnmod\t_\t_
10\tto\tto\tADP\t_\t_\t12\tcase\t_\t_
11\tthe\tthe\tDET\t_\t_\t12\tdet\t_\t_
12\tCommittee\tcommittee\tPROPN\t_\t_\t4\tobl\t_\t_
13\tthrough\tthrough\tADP\t_\t_\t16\tcase\t_\t_
14\tan\ta\tDET\t_\t_\t16\tdet\t_\t_
15\tonline\tonline\tADJ\t_\t_\t16\tamod\t_\t_
16\tform\tform\tNOUN\t_\t_\t4\tobl\t_\t_
17\tonce\tonce\tADV\t_\t_\t19\tadvmod\t_\t_
18\ta\ta\tDET\t_\t_\t19\tdet\t_\t_
19\tyear\tyear\tNOUN\t_\t_\t4\tobl:tmod\t_\t_
20\t.\t.\tPUNCT\t_\t_\t4\tpunct\t_\t_
"""

# "Such cooperation must include the exchange of information."  (constitutive)
MODAL = """\
# sent_id = modal
# text = Such cooperation must include the exchange of information.
1\tSuch\tsuch\tDET\t_\t_\t2\tdet\t_\t_
2\tcooperation\tcooperation\tNOUN\t_\t_\t4\tnsubj\t_\t_
3\tmust\tmust\tAUX\t_\t_\t4\taux\t_\t_
4\tinclude\tinclude\tVERB\t_\t_\t0\troot\t_\t_
5\tthe\tthe\tDET\t_\t_\t6\tdet\t_\t_
6\texchange\texchange\tNOUN\t_\t_\t4\tobj\t_\t_
7\tof\tof\tADP\t_\t_\t8\tcase\t_\t_
8\tinformation\tinformation\tNOUN\t_\t_\t6\tnmod\t_\t_
9\t.\t.\tPUNCT\t_\t_\t4\tpunct\t_\t_
"""

# "On the basis of proposals submitted by States Parties, in accordance
#  with criteria defined by the Committee, the Committee shall periodically
#  select and promote national, subregional and regional programmes,
#  projects and activities for the safeguarding of the heritage, taking
#  into account the special needs of developing countries."  (regulative)
SELECT = """\
# sent_id = select
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

# "The heritage means the practices and expressions recognized by
#  communities."  (constitutive, coordinated property)
MEANS = """\
# sent_id = means
1\tThe\tthe\tDET\t_\t_\t2\tdet\t_\t_
2\theritage\theritage\tNOUN\t_\t_\t3\tnsubj\t_\t_
3\tmeans\tmean\tVERB\t_\t_\t0\troot\t_\t_
4\tthe\tthe\tDET\t_\t_\t5\tdet\t_\t_
5\tpractices\tpractice\tNOUN\t_\t_\t3\tobj\t_\t_
6\tand\tand\tCCONJ\t_\t_\t7\tcc\t_\t_
7\texpressions\texpression\tNOUN\t_\t_\t5\tconj\t_\t_
8\trecognized\trecognize\tVERB\t_\t_\t5\tacl\t_\t_
9\tby\tby\tADP\t_\t_\t10\tcase\t_\t_
10\tcommunities\tcommunity\tNOUN\t_\t_\t8\tobl\t_\t_
11\t.\t.\tPUNCT\t_\t_\t3\tpunct\t_\t_
"""


def tree_of(block: str):
    return parse_conllu(block)[0]


@pytest.fixture(scope="session")
def engine():
    return default_engine()


@pytest.fixture
def unable_tree():
    return tree_of(UNABLE)


@pytest.fixture
def submit_tree():
    return tree_of(SUBMIT)


@pytest.fixture
def modal_tree():
    return tree_of(MODAL)


@pytest.fixture
def select_tree():
    return tree_of(SELECT)


@pytest.fixture
def means_tree():
    return tree_of(MEANS)
