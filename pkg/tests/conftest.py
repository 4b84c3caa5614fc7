import os
import tempfile

# isolate the universal-polynomial disk cache per test session, before any
# wittpolar import computes a cache path
os.environ.setdefault("WITTPOLAR_CACHE",
                      tempfile.mkdtemp(prefix="wittpolar-test-cache-"))
