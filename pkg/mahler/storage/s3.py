#!/usr/bin/env python3
"""S3 cache backend for sharing expansions between machines."""

import json
import logging
import os
import sys

from .base import CacheBackend

logger = logging.getLogger(__name__)

REQUIRED_ENV = ('AWS_ACCESS_KEY_ID', 'AWS_SECRET_ACCESS_KEY')
MISSING_CODES = ('404', 'NoSuchKey', 'NotFound')


class S3Cache(CacheBackend):
    """
    Cache entries as JSON objects under `prefix` in one bucket.

    A failed read is a cache miss and a failed write is logged and skipped:
    every entry can be recomputed from its recipe.
    """

    def __init__(self, config):
        missing = [name for name in REQUIRED_ENV if name not in os.environ]
        if missing:
            print(f"ERROR: S3 cache needs environment variables: {', '.join(missing)}")
            sys.exit(1)
        if not config.get('bucket_name'):
            print("ERROR: cache.s3.bucket_name is not set")
            sys.exit(1)

        self.bucket = config['bucket_name']
        self.prefix = config.get('prefix', 'mahler-cache/')
        self._client_args = {
            'endpoint_url': config.get('endpoint_url'),
            'region_name': config.get('region', 'us-east-1'),
        }
        self._client = None

    @property
    def client(self):
        """boto3 client, created on first use."""
        if self._client is None:
            try:
                import boto3
            except ImportError:
                print("ERROR: boto3 not installed. Install with: pip install boto3")
                sys.exit(1)
            self._client = boto3.client(
                's3',
                aws_access_key_id=os.environ['AWS_ACCESS_KEY_ID'],
                aws_secret_access_key=os.environ['AWS_SECRET_ACCESS_KEY'],
                **self._client_args,
            )
        return self._client

    def object_key(self, key):
        return f"{self.prefix}{key}.json"

    def url(self, key):
        return f"s3://{self.bucket}/{self.object_key(key)}"

    def get(self, key):
        try:
            response = self.client.get_object(Bucket=self.bucket, Key=self.object_key(key))
            data = json.loads(response['Body'].read().decode('utf-8'))
        except Exception as e:
            if _error_code(e) not in MISSING_CODES:
                logger.warning("treating %s as a miss: %s", self.url(key), e)
            else:
                logger.debug("cache miss: %s", self.url(key))
            return None
        logger.debug("cache hit: %s", self.url(key))
        return data

    def put(self, key, data):
        body = json.dumps(data, sort_keys=True).encode('utf-8')
        try:
            self.client.put_object(Bucket=self.bucket, Key=self.object_key(key), Body=body,
                                   ContentType='application/json')
        except Exception as e:
            logger.warning("could not write %s: %s", self.url(key), e)
            return None
        return self.url(key)

    def get_metadata(self, key):
        try:
            head = self.client.head_object(Bucket=self.bucket, Key=self.object_key(key))
        except Exception as e:
            if _error_code(e) in MISSING_CODES:
                return {'exists': False}
            raise
        return {
            'storage_mode': 's3',
            'url': self.url(key),
            'exists': True,
            'size': head.get('ContentLength'),
        }


def _error_code(error):
    """botocore ClientError code, or None for anything else."""
    return getattr(error, 'response', {}).get('Error', {}).get('Code')
