import json

import jsonschema
import pytest

from dunkl_coulomb import verify
from dunkl_coulomb.algebra import NormalMonomial, Operator
from dunkl_coulomb.errors import PreconditionError, UsageError
from dunkl_coulomb.verify import (CATALOG, REPORT_SCHEMA, IdentitySpec, associativity_fuzz, catalog, lookup,
                                  oracle_check, oracle_product_fuzz, reduction_check, run_identity, run_suite)


def test_catalog_ids_are_unique_and_cover_the_families():
    ids = [s.id for s in catalog()]
    assert len(ids) == len(set(ids))
    families = {i.split(".")[0] for i in ids}
    assert families >= {"DNK", "SO21", "JSQ", "CAS", "MIX", "SAME", "DEF", "REFL", "SODP2", "ADJ", "STURM",
                        "COMB", "CYC", "BSQ", "SCH", "HLP", "COMA", "REFA", "ASQ", "RED"}


def test_lookup():
    assert lookup("SO21.1").id == "SO21.1"
    with pytest.raises(UsageError):
        lookup("NOPE")


@pytest.mark.parametrize("identity_id", ["SO21.1", "DEF.JA", "COMB.BB", "HLP.2", "COMA.AA"])
def test_selected_entries_pass_syntactically(identity_id):
    entry = run_identity(lookup(identity_id), 2)
    assert entry.status == "pass-syntactic"
    assert entry.residual_terms == 0


def test_run_identity_rejects_unsupported_dimension():
    with pytest.raises(PreconditionError):
        run_identity(lookup("CYC.B"), 2)


def test_typo_entry_reports_a_nonzero_residual():
    entry = run_identity(lookup("STURM.BTYPO"), 2)
    assert entry.expect == "nonzero"
    assert entry.passed and entry.residual_terms > 0 and entry.residual


def test_corrupted_identity_fails_with_a_residual():
    def wrong(d):
        return [("[D1,x1] = 1", Operator.D(1, d) * Operator.x(1, d) - Operator.x(1, d) * Operator.D(1, d),
                 Operator.identity(d))]

    entry = run_identity(IdentitySpec("BAD", (1,), wrong), 1)
    assert entry.status == "fail"
    assert "mu1*R1" in entry.residual


def test_oracle_fallback_decides_non_canonical_residuals():
    # x1^2 - r^2 built without the radial reduction is zero as an operator on functions
    d = 1
    raw = Operator._raw(d, {NormalMonomial((2,), 0, (0,), (0,)): Operator.identity(d)._as_scalar(),
                            NormalMonomial((0,), 2, (0,), (0,)): (-Operator.identity(d))._as_scalar()})
    assert not raw.is_zero()
    assert oracle_check(raw, d)
    spec = IdentitySpec("RAW", (1,), lambda d: [("x1^2 = r^2", raw, Operator.zero(d))])
    assert run_identity(spec, 1).status == "pass-oracle"
    strict = IdentitySpec("RAW", (1,), lambda d: [("x1^2 = r^2", raw, Operator.zero(d))], oracle_fallback=False)
    assert run_identity(strict, 1).status == "fail"


def test_oracle_check_detects_nonzero_operators():
    assert not oracle_check(Operator.D(1, 2), 2)
    with pytest.raises(PreconditionError):
        oracle_check(Operator.D(1, 2), 3)


def test_run_suite_filter_and_order():
    report = run_suite([2, 1], filter="SO21")
    assert [(e.id, e.d) for e in report.entries] == sorted((e.id, e.d) for e in report.entries)
    assert {e.id for e in report.entries} == {"SO21.1", "SO21.2", "SO21.3"}
    assert report.dims == [1, 2] and report.all_passed
    with pytest.raises(UsageError):
        run_suite([2], filter="ZZZ")
    with pytest.raises(UsageError):
        run_suite([])


def test_report_schema_and_determinism():
    a = run_suite([1, 2], seed=3, filter="DEF")
    b = run_suite([1, 2], seed=3, filter="DEF")
    jsonschema.validate(json.loads(a.to_json()), REPORT_SCHEMA)
    assert a.to_dict(timings=False) == b.to_dict(timings=False)
    assert "millis" not in a.to_dict(timings=False)["entries"][0]


def test_progress_callback():
    seen = []
    run_suite([1], filter="DNK", progress=seen.append)
    assert {e.id for e in seen} == {"DNK.DX", "DNK.RX", "DNK.RD", "DNK.CROSS"}


def test_engine_self_checks():
    assert associativity_fuzz(2, 30, seed=1).passed
    assert oracle_product_fuzz(2, 5, seed=1).passed
    with pytest.raises(PreconditionError):
        associativity_fuzz(2, 0)


def test_reduction_check_only_at_three_dimensions():
    assert reduction_check(3).passed
    with pytest.raises(PreconditionError):
        reduction_check(2)


def test_catalog_is_a_copy():
    items = catalog()
    items.clear()
    assert len(verify.CATALOG) == len(CATALOG) > 0
