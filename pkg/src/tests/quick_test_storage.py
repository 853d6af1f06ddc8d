#!/usr/bin/env python3
"""
Report Storage Test Script
=========================

Quick test of the TinyDB-backed error-study report storage.
"""

import os
import tempfile

from src.db.base_storage import ReportStorage
from src.mc.mc_engine import empirical_randomized_error
from src.spaces.schemas import AnalyticSpace, FiniteSmoothnessSpace


def _reports():
    finite = FiniteSmoothnessSpace(s=2, alpha=2.0, gamma=[0.9, 0.5])
    analytic = AnalyticSpace(s=2, omega=0.5, a=[2.0, 1.0], b=[1.0, 3.0])
    return [
        empirical_randomized_error(finite, 100, 20, master_seed=1),
        empirical_randomized_error(finite, 10, 20, master_seed=1),
        empirical_randomized_error(analytic, 50, 20, master_seed=1),
    ]


def test_basic_operations():
    """Add, deduplicate, count, check existence and clear."""
    print("🗄️  TESTING BASIC STORAGE OPERATIONS")
    print("=" * 40)

    with tempfile.NamedTemporaryFile(suffix='.json', delete=False) as tmp:
        db_path = tmp.name

    try:
        storage = ReportStorage(db_path)
        reports = _reports()

        result = storage.add_reports(reports)
        print(f"✅ Result: received={result['received']}, added={result['added']}, duplicates={result['duplicates']}")
        assert result == {'received': 3, 'added': 3, 'duplicates': 0}

        # identical reruns differ only in wall time
        rerun = empirical_randomized_error(reports[0].space, 100, 20, master_seed=1)
        duplicate_result = storage.add_reports([rerun] + reports)
        assert duplicate_result == {'received': 4, 'added': 0, 'duplicates': 4}

        assert storage.get_report_count() == 3
        assert len(storage) == 3
        assert storage.report_exists(reports[1])
        assert not storage.report_exists(empirical_randomized_error(reports[0].space, 100, 20, master_seed=2))

        cleared_count = storage.clear_all_reports()
        assert cleared_count == 3
        assert storage.get_report_count() == 0

        storage.close()
        print("✅ All basic tests passed!")

    finally:
        os.unlink(db_path)


def test_retrieval():
    """Sorting, family filter, limits and the stored document layout."""
    print("\n📋 TESTING REPORT RETRIEVAL")
    print("=" * 40)

    with tempfile.NamedTemporaryFile(suffix='.json', delete=False) as tmp:
        db_path = tmp.name

    try:
        with ReportStorage(db_path) as storage:
            storage.add_reports(_reports())

            by_n = storage.get_all_reports(sort_by='n')
            assert [doc['n'] for doc in by_n] == [10, 50, 100]
            assert [doc['n'] for doc in storage.get_all_reports(sort_by='n', descending=True)] == [100, 50, 10]

            analytic = storage.get_all_reports(family_filter='analytic')
            assert len(analytic) == 1 and analytic[0]['worst_case_index'] == [0, 1]
            assert len(storage.get_all_reports(family_filter='finite_smoothness')) == 2
            assert len(storage.get_all_reports(limit=2)) == 2

            first = by_n[0]
            assert 'wall_time_ms' not in first
            assert {'_content_hash', '_stored_at', 'theoretical_error', 'empirical_mse'} <= set(first)
            assert first['space']['gamma']['values'] == [0.9, 0.5]

        with ReportStorage(db_path, enable_caching=True) as reopened:
            assert reopened.get_report_count() == 3
        print("✅ Retrieval tests passed!")

    finally:
        os.unlink(db_path)


def main():
    """Run all tests."""
    print("🚀 REPORT STORAGE TESTS")
    print("=" * 50)

    try:
        test_basic_operations()
        test_retrieval()

        print(f"\n🎉 ALL TESTS PASSED!")

    except Exception as e:
        print(f"\n💥 TEST FAILED: {e}")
        import traceback
        traceback.print_exc()


if __name__ == "__main__":
    main()
