"""SQLite ledger of verification reports."""

import uuid
from datetime import datetime
from typing import List, Optional

import aiosqlite
from pydantic import BaseModel

from verify.reports import VerificationReport


class StoredReport(BaseModel):
    report_id: str
    suite: str
    created_at: datetime
    passed: bool
    report: VerificationReport


class ReportStore:
    """Persists verification reports, one row per suite run."""

    def __init__(self, db_path: str = "quasishift.db"):
        self.db_path = db_path
        self._initialized = False

    async def initialize(self):
        if self._initialized:
            return

        async with aiosqlite.connect(self.db_path) as db:
            await db.execute(
                """
                CREATE TABLE IF NOT EXISTS reports (
                    report_id TEXT PRIMARY KEY,
                    suite TEXT NOT NULL,
                    created_at TEXT NOT NULL,
                    passed INTEGER NOT NULL,
                    payload TEXT NOT NULL
                )
            """
            )
            await db.commit()

        self._initialized = True

    async def save_report(self, suite: str, report: VerificationReport) -> str:
        await self.initialize()

        report_id = str(uuid.uuid4())
        async with aiosqlite.connect(self.db_path) as db:
            await db.execute(
                """
                INSERT INTO reports (report_id, suite, created_at, passed, payload)
                VALUES (?, ?, ?, ?, ?)
            """,
                (
                    report_id,
                    suite,
                    datetime.now().isoformat(),
                    int(report.passed),
                    report.model_dump_json(),
                ),
            )
            await db.commit()

        return report_id

    async def get_report(self, report_id: str) -> Optional[StoredReport]:
        await self.initialize()

        async with aiosqlite.connect(self.db_path) as db:
            async with db.execute(
                "SELECT report_id, suite, created_at, passed, payload FROM reports WHERE report_id = ?",
                [report_id],
            ) as cursor:
                row = await cursor.fetchone()
                return self._row_to_report(row) if row else None

    async def list_reports(self, suite: Optional[str] = None) -> List[StoredReport]:
        """Stored runs, newest first."""
        await self.initialize()

        query = "SELECT report_id, suite, created_at, passed, payload FROM reports"
        params = []
        if suite:
            query += " WHERE suite = ?"
            params.append(suite)
        query += " ORDER BY created_at DESC, rowid DESC"

        async with aiosqlite.connect(self.db_path) as db:
            async with db.execute(query, params) as cursor:
                rows = await cursor.fetchall()
                return [self._row_to_report(row) for row in rows]

    @staticmethod
    def _row_to_report(row) -> StoredReport:
        return StoredReport(
            report_id=row[0],
            suite=row[1],
            created_at=datetime.fromisoformat(row[2]),
            passed=bool(row[3]),
            report=VerificationReport.model_validate_json(row[4]),
        )
