import io
import logging
import os
import sys

LOGGER_NAME = "quasishift"


class StableStreamHandler(logging.StreamHandler):
    """Stream handler that reports to the live stderr instead of raising when its
    stream has been closed underneath it (pytest capture, piped CLI output)."""

    def emit(self, record):
        if self.stream is None or getattr(self.stream, "closed", False):
            try:
                current_stderr = sys.stderr
                if current_stderr and not getattr(current_stderr, "closed", False):
                    print(
                        f"LOGGER_ERROR: Stream '{self.stream}' closed or None. Record: {self.format(record)}",
                        file=current_stderr,
                    )
                    current_stderr.flush()
            except Exception:
                pass
            return
        try:
            super().emit(record)
        except Exception as e:
            try:
                current_stderr = sys.stderr
                if current_stderr and not getattr(current_stderr, "closed", False):
                    print(
                        f"LOGGER_EMIT_ERROR: Error during emit: {e}. Record: {self.format(record)}",
                        file=current_stderr,
                    )
                    current_stderr.flush()
            except Exception:
                pass


def _env_log_level() -> int:
    for name in ("QUASISHIFT_DEBUG", "DEBUG"):
        if os.getenv(name, "false").lower() == "true":
            return logging.DEBUG
    return logging.INFO


def setup_logger(output_stream=None, log_level_override=None):
    """
    Configures and returns the package logger.
    The level comes from the DEBUG / QUASISHIFT_DEBUG environment variables
    unless overridden; the stream defaults to sys.stderr.
    """
    log_level = log_level_override if log_level_override is not None else _env_log_level()

    logger_instance = logging.getLogger(LOGGER_NAME)
    logger_instance.setLevel(log_level)

    if logger_instance.hasHandlers():
        logger_instance.handlers.clear()

    if output_stream is not None and not getattr(output_stream, "closed", False):
        handler_stream = output_stream
    else:
        current_stderr = sys.stderr
        if current_stderr and not getattr(current_stderr, "closed", False):
            handler_stream = current_stderr
        else:
            handler_stream = io.StringIO()

    ch = StableStreamHandler(handler_stream)
    ch.setLevel(log_level)
    ch.setFormatter(
        logging.Formatter("%(asctime)s - %(name)s - %(levelname)s - %(message)s")
    )
    logger_instance.addHandler(ch)
    logger_instance.propagate = False

    return logger_instance


logger = logging.getLogger(LOGGER_NAME)
if not logger.hasHandlers():
    logger.addHandler(logging.NullHandler())
