"""Exit criteria. Each test prints one verdict line in the session summary."""
from collections import Counter
from decimal import Decimal

import pytest
from figures import FIRST, FIRST_ONE_OUTPUT, SECOND

from deccospan import CIRCUIT, VECTFIELD
from deccospan.circuits import dot_export
from deccospan.cli import dumps, network_to_json
from deccospan.decoration import dcompose, dtensor
from deccospan.finset import skip_normalization
from deccospan.laws import (
    CaseGenerator,
    check_decoration_functor,
    check_fibrancy,
    check_monoidal_structure,
    check_pseudo_double_category,
    check_symmetry,
    check_vectfield_functoriality,
    pushout_oracle,
)

pytestmark = pytest.mark.acceptance

D = Decimal
STRUCTURE = CaseGenerator(seed=0, max_set_size=4, case_count=1000)
DECORATED = CaseGenerator(seed=0, max_set_size=4, case_count=500)
FIELDS = CaseGenerator(seed=0, max_set_size=3, max_degree=3, case_count=300)


def structure_reports():
    return [check(STRUCTURE) for check in
            (check_pseudo_double_category, check_monoidal_structure, check_symmetry)]


def decoration_reports():
    return [check_decoration_functor(b, DECORATED) for b in (CIRCUIT, VECTFIELD)]


def fibrancy_report():
    return check_fibrancy(3, backends=[CIRCUIT, VECTFIELD])


def test_circuit_composition_golden(criterion):
    with criterion(1, "circuit composition golden", 1.0):
        c = dcompose(FIRST, SECOND)
        g = c.decoration
        assert g.nodes.size == 4 and len(g.edge_list) == 6
        assert Counter(g.labels) == Counter(D(x) for x in ["0.2", "1.3", "0.8", "2.0", "1.7", "0.3"])
        merged, former_b2 = 1, 3
        assert sorted(lab for s, t, lab in g.edge_list if (s, t) == (merged, former_b2)) == [D("0.3"), D("1.7")]
        assert c.cospan.in_leg.table == (0,)
        assert c.cospan.out_leg.table == (former_b2, merged)
        runs = {(dumps(network_to_json(dcompose(FIRST, SECOND))), dot_export(dcompose(FIRST, SECOND)))
                for _ in range(5)}
        assert len(runs) == 1


def test_circuit_tensor_golden(criterion):
    with criterion(2, "circuit tensor golden", 1.0):
        t = dtensor(FIRST_ONE_OUTPUT, SECOND)
        g = t.decoration
        assert g.nodes.size == 6 and len(g.edge_list) == 6
        assert (t.left_foot.size, t.right_foot.size) == (3, 3)
        # every edge stays inside one summand, and both summands keep their edges
        sides = [(s < 3, t < 3) for s, t, _ in g.edge_list]
        assert all(a == b for a, b in sides)
        assert Counter(a for a, _ in sides) == Counter({True: 4, False: 2})


def test_pushout_oracle(criterion):
    with criterion(3, "pushout oracle, exhaustive to size 3", 60.0):
        report = pushout_oracle(3)
        assert report.cases_run >= 1000
        assert report.passed, report.text()


def test_double_category_laws(criterion):
    with criterion(4, "double category, monoidal and braiding laws, 1000 cases", 120.0):
        for report in structure_reports():
            assert report.cases_run == 1000
            assert report.passed, report.text()


def test_fibrancy(criterion):
    with criterion(5, "companion and conjoint equations to size 3", 30.0):
        report = fibrancy_report()
        assert report.cases_run == 60
        assert report.passed, report.text()


def test_decoration_coherence(criterion):
    with criterion(6, "decoration coherence, 500 cases per backend", 120.0):
        for report in decoration_reports():
            assert report.cases_run == 500
            assert report.passed, report.text()


def test_vectfield_functoriality(criterion):
    with criterion(7, "vector field functoriality, 300 cases", 60.0):
        report = check_vectfield_functoriality(FIELDS, points=10)
        assert report.cases_run == 300
        assert report.passed, report.text()


def test_mutation_sensitivity(criterion):
    with criterion(8, "suites catch disabled normalization", 300.0):
        with skip_normalization():
            suites = {
                3: [pushout_oracle(3)],
                4: structure_reports(),
                5: [fibrancy_report()],
                6: decoration_reports(),
            }
        for number, reports in suites.items():
            for report in reports:
                assert not report.passed, f"criterion {number}: {report.law} did not notice the mutation"
                assert report.failures
        assert pushout_oracle(2).passed
