"""
Storage System
============================

Persistent storage of error-study reports using TinyDB.
"""

import logging
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Optional

from tinydb import Query, TinyDB
from tinydb.storages import JSONStorage
from tinydb.middlewares import CachingMiddleware

from src.config import RESULTS_STORAGE_NAME
from src.mc.schemas import ErrorReport

logger = logging.getLogger(__name__)

SORTABLE_FIELDS = ('n', 's', 'theoretical_error', 'empirical_rmse', '_stored_at')


class ReportStorage:
    """
    Persistent storage of ErrorReports using TinyDB.
    Features:
    - Deduplication by content hash (identical reruns are stored once)
    - Filtering by space family, sorting and limits
    """

    def __init__(self, db_path: str = RESULTS_STORAGE_NAME, enable_caching: bool = False):
        """
        Initialize TinyDB connection with optional caching.

        Args:
            db_path: Path to the database file
            enable_caching: Enable TinyDB caching (writes land on close).
        """
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)

        storage = CachingMiddleware(JSONStorage) if enable_caching else JSONStorage
        self.db = TinyDB(str(self.db_path), storage=storage, encoding="utf-8", ensure_ascii=False, indent=2)
        self.reports_table = self.db.table('reports')
        logger.info(f"Initialized ReportStorage: {self.db_path} (caching: {enable_caching})")

    def add_reports(self, reports: Iterable[ErrorReport]) -> dict[str, int]:
        """
        Add reports, skipping any whose content hash is already stored.
        Returns:
            Dictionary with operation statistics
        """
        Report = Query()
        received_count, added_count, duplicate_count = 0, 0, 0

        for report in reports:
            received_count += 1
            content_hash = report.content_hash()
            if self.reports_table.contains(Report._content_hash == content_hash):
                duplicate_count += 1
                logger.debug(f"Skipped duplicate report {content_hash} (n={report.n})")
                continue

            document = report.model_dump(mode='json', by_alias=True, exclude={'wall_time_ms'})
            document['_content_hash'] = content_hash
            document['_stored_at'] = datetime.now(timezone.utc).isoformat()
            self.reports_table.insert(document)
            added_count += 1
            logger.debug(f"Added report {content_hash} (n={report.n})")

        result = {
            "received": received_count,
            "added": added_count,
            "duplicates": duplicate_count,
        }
        logger.info(f"Storage operation: {result}")
        return result

    def get_all_reports(self,
                        sort_by: str = 'n',
                        descending: bool = False,
                        limit: Optional[int] = None,
                        family_filter: Optional[str] = None) -> list[dict[str, Any]]:
        """
        Retrieve stored reports with filtering and sorting.

        Args:
            sort_by: Field to sort by (one of SORTABLE_FIELDS)
            descending: Sort in descending order
            limit: Maximum number of reports to return
            family_filter: Space family ('finite_smoothness' or 'analytic')

        Returns:
            List of filtered and sorted report documents
        """
        Report = Query()
        if family_filter:
            reports = self.reports_table.search(Report.space.family == family_filter)
        else:
            reports = self.reports_table.all()

        if reports and sort_by in SORTABLE_FIELDS:
            reports.sort(key=lambda x: (x.get(sort_by, 0), x.get('_content_hash', '')), reverse=descending)

        if limit and limit > 0:
            reports = reports[:limit]

        logger.info(f"Retrieved {len(reports)} reports (filter: {family_filter}, limit: {limit})")
        return [dict(report) for report in reports]

    def clear_all_reports(self) -> int:
        """
        Clear all reports from storage. Returns number of deleted reports.
        """
        count = len(self.reports_table)
        self.reports_table.truncate()
        logger.info(f"Cleared {count} reports from storage")
        return count

    def report_exists(self, report: ErrorReport) -> bool:
        Report = Query()
        return self.reports_table.contains(Report._content_hash == report.content_hash())

    def get_report_count(self) -> int:
        return len(self.reports_table)

    def close(self):
        self.db.close()
        logger.info("Closed database")

    def __len__(self) -> int:
        return len(self.reports_table)

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        self.close()
