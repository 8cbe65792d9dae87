"""
tests/test_storage.py
Cache backends and backend selection.
"""

import io

import pytest

from mahler.storage import CACHE_DIR_ENV, LocalCache, NullCache, S3Cache, get_cache_backend


class TestLocalCache:

    def test_put_then_get(self, tmp_path):
        cache = LocalCache({'directory': str(tmp_path / 'cache')})
        path = cache.put('expansion-abc-10', {'coeffs': ['1', '1/3']})
        assert path.endswith('expansion-abc-10.json')
        assert cache.get('expansion-abc-10') == {'coeffs': ['1', '1/3']}

    def test_miss(self, tmp_path):
        assert LocalCache({'directory': str(tmp_path)}).get('nothing') is None

    def test_unreadable_entry_is_a_miss(self, tmp_path):
        (tmp_path / 'broken.json').write_text('{not json')
        assert LocalCache({'directory': str(tmp_path)}).get('broken') is None

    def test_metadata(self, tmp_path):
        cache = LocalCache({'directory': str(tmp_path)})
        assert cache.get_metadata('k') == {'exists': False}
        cache.put('k', [1, 2, 3])
        meta = cache.get_metadata('k')
        assert meta['exists'] and meta['storage_mode'] == 'local'


class TestBackendSelection:

    def test_null(self):
        cache = get_cache_backend({'cache': {'backend': 'none'}})
        assert isinstance(cache, NullCache)
        cache.put('k', 1)
        assert cache.get('k') is None

    def test_directory_from_environment(self, tmp_path, monkeypatch):
        monkeypatch.setenv(CACHE_DIR_ENV, str(tmp_path))
        cache = get_cache_backend({'cache': {'backend': 'local', 'directory': '/elsewhere'}})
        assert cache.cache_dir == tmp_path

    def test_s3_needs_credentials(self, monkeypatch):
        monkeypatch.delenv('AWS_ACCESS_KEY_ID', raising=False)
        monkeypatch.delenv('AWS_SECRET_ACCESS_KEY', raising=False)
        with pytest.raises(SystemExit):
            get_cache_backend({'cache': {'backend': 's3', 's3': {'bucket_name': 'b'}}})

    def test_unknown_backend(self):
        with pytest.raises(SystemExit):
            get_cache_backend({'cache': {'backend': 'redis'}})


class _MissingKey(Exception):
    response = {'Error': {'Code': 'NoSuchKey'}}


class _FakeS3:
    """Enough of the boto3 S3 client for the cache."""

    def __init__(self, fail_writes=False):
        self.objects = {}
        self.fail_writes = fail_writes

    def get_object(self, Bucket, Key):
        if (Bucket, Key) not in self.objects:
            raise _MissingKey(Key)
        return {'Body': io.BytesIO(self.objects[(Bucket, Key)])}

    def put_object(self, Bucket, Key, Body, ContentType):
        if self.fail_writes:
            raise ConnectionError("endpoint unreachable")
        self.objects[(Bucket, Key)] = Body

    def head_object(self, Bucket, Key):
        if (Bucket, Key) not in self.objects:
            raise _MissingKey(Key)
        return {'ContentLength': len(self.objects[(Bucket, Key)])}


class TestS3Cache:

    @pytest.fixture
    def credentials(self, monkeypatch):
        monkeypatch.setenv('AWS_ACCESS_KEY_ID', 'test')
        monkeypatch.setenv('AWS_SECRET_ACCESS_KEY', 'test')

    def _cache(self, client):
        cache = S3Cache({'bucket_name': 'bucket', 'prefix': 'p/'})
        cache._client = client
        return cache

    def test_round_trip_through_prefix(self, credentials):
        client = _FakeS3()
        cache = self._cache(client)
        assert cache.put('expansion-abc-10', {'coeffs': ['1']}) == 's3://bucket/p/expansion-abc-10.json'
        assert ('bucket', 'p/expansion-abc-10.json') in client.objects
        assert cache.get('expansion-abc-10') == {'coeffs': ['1']}

    def test_missing_key_is_a_miss(self, credentials):
        cache = self._cache(_FakeS3())
        assert cache.get('nothing') is None
        assert cache.get_metadata('nothing') == {'exists': False}

    def test_failed_write_is_skipped(self, credentials):
        cache = self._cache(_FakeS3(fail_writes=True))
        assert cache.put('k', {'a': 1}) is None
        assert cache.get('k') is None

    def test_needs_bucket(self, credentials):
        with pytest.raises(SystemExit):
            S3Cache({})
