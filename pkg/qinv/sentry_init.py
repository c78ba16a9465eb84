"""
Minimal Sentry bootstrap for the CLI.

Errors and run milestones (center built, invariants computed, identities
checked) are reported when SENTRY_DSN is set; otherwise this is a no-op.
"""

from __future__ import annotations

from qinv.config import settings


def init_sentry() -> None:
    """
    Initialize Sentry only if a DSN is provided.

    Settings:
    - SENTRY_DSN: project DSN (empty -> no-op)
    - SENTRY_ENV: environment name (e.g., 'development', 'production')
    - SENTRY_TRACES: traces sample rate (default 0.0)
    """
    dsn = settings.SENTRY_DSN
    if not dsn:
        return

    try:
        import sentry_sdk
        from sentry_sdk.integrations.excepthook import ExcepthookIntegration
        from sentry_sdk.integrations.logging import LoggingIntegration

        sentry_sdk.init(
            dsn=dsn,
            environment=settings.SENTRY_ENV,
            traces_sample_rate=settings.SENTRY_TRACES,
            integrations=[
                ExcepthookIntegration(),   # capture unexpected exceptions
                LoggingIntegration(level=None, event_level=None),
            ],
        )
    except Exception as exc:  # pragma: no cover
        print(f"[sentry] init skipped: {exc}")
