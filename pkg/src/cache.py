'''
Cache module
On-disk store of computed polynomials: canonical text, binary form and an
index of sha256 hashes checked on every load
'''

import hashlib
import json
import logging
import os
from pathlib import Path
from typing import Optional

from config import TOOL_VERSION
from polynomial import CacheFormatError, Polynomial, VariableSpace, from_binary

logger = logging.getLogger(__name__)

INDEX_NAME = 'index.json'


class CacheCorruptedError(RuntimeError):
    '''Stored bytes do not match the hashes recorded in the index'''
    def __init__(self, key: str, detail: str):
        self.key = key
        super().__init__(f'Cache entry {key}: {detail}')


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


class ArtifactCache:
    '''Entries are keyed by (tool version, target, normalization flags)'''

    def __init__(self, root, version: str = TOOL_VERSION, enabled: bool = True):
        self.root = Path(root)
        self.version = version
        self.enabled = enabled

    def key(self, target: str, flags: str = '') -> str:
        return f'{self.version}-{target}' + (f'-{flags}' if flags else '')

    @property
    def index_path(self) -> Path:
        return self.root / INDEX_NAME

    def _read_index(self) -> dict:
        if not self.index_path.exists():
            return {}
        try:
            return json.loads(self.index_path.read_text(encoding='utf-8'))
        except json.JSONDecodeError as exc:
            raise CacheCorruptedError(INDEX_NAME, f'unreadable index ({exc})') from None

    def _write_index(self, index: dict):
        tmp = self.index_path.with_suffix('.tmp')
        tmp.write_text(json.dumps(index, indent=2, sort_keys=True), encoding='utf-8')
        os.replace(tmp, self.index_path)

    def entry(self, target: str, flags: str = '') -> Optional[dict]:
        return self._read_index().get(self.key(target, flags))

    def load(self, target: str, space: VariableSpace, flags: str = '') -> Optional[Polynomial]:
        '''The cached polynomial, None on a miss; CacheCorruptedError on any mismatch'''
        if not self.enabled:
            return None
        key = self.key(target, flags)
        entry = self._read_index().get(key)
        if entry is None:
            logger.info('Cache miss: %s', key)
            return None
        binary_path = self.root / entry['binary']
        text_path = self.root / entry['text']
        if not binary_path.exists() or not text_path.exists():
            raise CacheCorruptedError(key, 'indexed file is missing')
        data = binary_path.read_bytes()
        if _sha256(data) != entry['binary_sha256']:
            raise CacheCorruptedError(key, 'binary hash mismatch')
        if _sha256(text_path.read_bytes()) != entry['text_sha256']:
            raise CacheCorruptedError(key, 'text hash mismatch')
        try:
            poly = from_binary(data, space)
        except CacheFormatError as exc:
            raise CacheCorruptedError(key, str(exc)) from None
        if poly.content_hash() != entry['content_hash']:
            raise CacheCorruptedError(key, 'decoded polynomial differs from its text')
        logger.info('Cache hit: %s (%d terms)', key, len(poly))
        return poly

    def store(self, target: str, poly: Polynomial, flags: str = '') -> dict:
        if not self.enabled:
            return {}
        self.root.mkdir(parents=True, exist_ok=True)
        key = self.key(target, flags)
        text = poly.serialize()
        binary = poly.to_binary()
        (self.root / f'{key}.txt').write_bytes(text)
        (self.root / f'{key}.bin').write_bytes(binary)
        entry = {
            'text': f'{key}.txt', 'text_sha256': _sha256(text),
            'binary': f'{key}.bin', 'binary_sha256': _sha256(binary),
            'content_hash': poly.content_hash(), 'terms': len(poly),
        }
        index = self._read_index()
        index[key] = entry
        self._write_index(index)
        logger.info('Cached %s (%d terms)', key, len(poly))
        return entry
