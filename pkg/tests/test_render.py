import itertools
import json

from querylab import (
    CrossProduct,
    Join,
    Projection,
    Relation,
    Selection,
    enumerate_nodes,
    optimize,
    parse,
    run_query,
    to_latex,
    to_tree_json,
    to_unicode,
    translate,
)
from querylab.predicates import (
    And,
    ColumnRef,
    Comparison,
    IntLiteral,
    Not,
    Or,
    StrLiteral,
    predicate_to_text,
)

DEPT_FILTER = Comparison(ColumnRef("Doctor", "departmentId"), "=", IntLiteral(1))
FK = Comparison(ColumnRef("Doctor", "id"), "=", ColumnRef("Patient", "doctorId"))
DEMO_SQL = (
    "SELECT Patient.name FROM Doctor JOIN Patient ON Doctor.id = Patient.doctorId "
    "WHERE Doctor.departmentId = 1"
)


class TestUnicode:
    def test_selection(self):
        expr = Selection(DEPT_FILTER, Relation("Doctor"))
        assert to_unicode(expr) == "σ_{Doctor.departmentId = 1}(Doctor)"

    def test_projection(self):
        expr = Projection((ColumnRef("Doctor", "name"),), Relation("Doctor"))
        assert to_unicode(expr) == "π_{Doctor.name}(Doctor)"

    def test_join(self):
        expr = Join(FK, Relation("Doctor"), Relation("Patient"))
        assert to_unicode(expr) == "Doctor ⋈_{Doctor.id = Patient.doctorId} Patient"

    def test_cross_product(self):
        expr = CrossProduct(Relation("Doctor"), Relation("Patient"))
        assert to_unicode(expr) == "Doctor × Patient"

    def test_alias(self):
        assert to_unicode(Relation("Doctor", "d")) == "Doctor AS d"

    def test_nested_binary_operands_get_parentheses(self):
        inner = Join(FK, Relation("Doctor"), Relation("Patient"))
        expr = CrossProduct(inner, Relation("Department"))
        assert (
            to_unicode(expr)
            == "(Doctor ⋈_{Doctor.id = Patient.doctorId} Patient) × Department"
        )


class TestLatex:
    def test_selection(self):
        expr = Selection(DEPT_FILTER, Relation("Doctor"))
        assert to_latex(expr) == "\\sigma_{Doctor.departmentId = 1}(Doctor)"

    def test_cross_product(self):
        expr = CrossProduct(Relation("Doctor"), Relation("Patient"))
        assert to_latex(expr) == "Doctor \\times Patient"

    def test_nested_projection_over_selection(self):
        expr = Projection(
            (ColumnRef("Doctor", "name"),), Selection(DEPT_FILTER, Relation("Doctor"))
        )
        assert (
            to_latex(expr)
            == "\\pi_{Doctor.name}(\\sigma_{Doctor.departmentId = 1}(Doctor))"
        )


class TestPredicateText:
    def test_or_child_of_and_keeps_parentheses(self):
        a = Comparison(ColumnRef("Doctor", "id"), "=", IntLiteral(1))
        b = Comparison(ColumnRef("Doctor", "id"), "=", IntLiteral(2))
        c = Comparison(ColumnRef("Doctor", "id"), "=", IntLiteral(3))
        assert predicate_to_text(And(Or(a, b), c)) == (
            "(Doctor.id = 1 OR Doctor.id = 2) AND Doctor.id = 3"
        )

    def test_right_nested_and_keeps_parentheses(self):
        a = Comparison(ColumnRef("Doctor", "id"), "=", IntLiteral(1))
        b = Comparison(ColumnRef("Doctor", "id"), "=", IntLiteral(2))
        c = Comparison(ColumnRef("Doctor", "id"), "=", IntLiteral(3))
        assert predicate_to_text(And(a, And(b, c))) == (
            "Doctor.id = 1 AND (Doctor.id = 2 AND Doctor.id = 3)"
        )

    def test_not_wraps_non_comparisons(self):
        a = Comparison(ColumnRef("Doctor", "id"), "=", IntLiteral(1))
        b = Comparison(ColumnRef("Doctor", "id"), "=", IntLiteral(2))
        assert predicate_to_text(Not(And(a, b))) == "NOT (Doctor.id = 1 AND Doctor.id = 2)"
        assert predicate_to_text(Not(a)) == "NOT Doctor.id = 1"

    def test_string_quotes_escape(self):
        cmp = Comparison(ColumnRef("Doctor", "name"), "=", StrLiteral("O'Hara"))
        assert predicate_to_text(cmp) == "Doctor.name = 'O''Hara'"


class TestTreeJson:
    def test_relation_leaf(self):
        doc = to_tree_json(Relation("Doctor"))
        assert doc == {"kind": "relation", "label": "Doctor", "path": [], "children": []}

    def test_selection_over_leaf(self):
        doc = to_tree_json(Selection(DEPT_FILTER, Relation("Doctor")))
        assert doc["kind"] == "selection"
        assert doc["label"] == "σ Doctor.departmentId = 1"
        assert doc["children"][0]["path"] == [0]

    def test_paths_match_enumeration(self, catalog):
        expr = translate(parse(DEMO_SQL), catalog)
        doc = to_tree_json(expr)
        flat = []

        def walk(node):
            flat.append(tuple(node["path"]))
            for child in node["children"]:
                walk(child)

        walk(doc)
        assert flat == [path for path, _ in enumerate_nodes(expr)]

    def test_cardinalities_present_with_results(self, catalog):
        run = run_query(DEMO_SQL, catalog)
        doc = to_tree_json(run.expr, run.results)
        assert doc["cardinality"] == 3
        assert doc["children"][0]["cardinality"] == 3

    def test_optimization_moves_only_the_selection(self, catalog):
        plain = translate(parse(DEMO_SQL), catalog)
        optimized, _ = optimize(plain)
        plain_kinds = [kind for _, kind in enumerate_nodes(plain)]
        optimized_kinds = [kind for _, kind in enumerate_nodes(optimized)]
        assert plain_kinds == ["projection", "selection", "join", "relation", "relation"]
        assert optimized_kinds == ["projection", "join", "selection", "relation", "relation"]


def test_structural_injectivity_on_sample_trees(catalog):
    dept = Comparison(ColumnRef("Department", "id"), "=", ColumnRef("Doctor", "departmentId"))
    exprs = [
        Relation("Doctor"),
        Relation("Doctor", "d"),
        Selection(DEPT_FILTER, Relation("Doctor")),
        Projection((ColumnRef("Doctor", "name"),), Relation("Doctor")),
        Join(FK, Relation("Doctor"), Relation("Patient")),
        CrossProduct(Relation("Doctor"), Relation("Patient")),
        Selection(DEPT_FILTER, Join(FK, Relation("Doctor"), Relation("Patient"))),
        Join(FK, Selection(DEPT_FILTER, Relation("Doctor")), Relation("Patient")),
        Join(FK, Join(dept, Relation("Department"), Relation("Doctor")), Relation("Patient")),
        Join(dept, Relation("Department"), Join(FK, Relation("Doctor"), Relation("Patient"))),
    ]
    renderings = [to_unicode(e) for e in exprs]
    for (i, a), (j, b) in itertools.combinations(enumerate(renderings), 2):
        assert a != b, f"expressions {i} and {j} render identically: {a}"


class TestGolden:
    def test_unicode_demo(self, catalog, golden):
        run = run_query(DEMO_SQL, catalog)
        golden("unicode_demo.txt", to_unicode(run.expr) + "\n")

    def test_unicode_demo_optimized(self, catalog, golden):
        run = run_query(DEMO_SQL, catalog, optimize_expr=True)
        golden("unicode_demo_optimized.txt", to_unicode(run.expr) + "\n")

    def test_latex_demo(self, catalog, golden):
        run = run_query(DEMO_SQL, catalog)
        golden("latex_demo.txt", to_latex(run.expr) + "\n")

    def test_latex_demo_optimized(self, catalog, golden):
        run = run_query(DEMO_SQL, catalog, optimize_expr=True)
        golden("latex_demo_optimized.txt", to_latex(run.expr) + "\n")

    def test_tree_json_demo(self, catalog, golden):
        run = run_query(DEMO_SQL, catalog)
        doc = to_tree_json(run.expr, run.results)
        golden("tree_demo.json", json.dumps(doc, indent=2, ensure_ascii=False) + "\n")

    def test_tree_json_demo_optimized(self, catalog, golden):
        run = run_query(DEMO_SQL, catalog, optimize_expr=True)
        doc = to_tree_json(run.expr, run.results)
        golden("tree_demo_optimized.json", json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
