import os
import subprocess

from functools import lru_cache

# Version management for wealthmaps

# Manual version - update this when you make significant changes
MANUAL_VERSION = "1.0.0"

REPO_ROOT = os.path.dirname(os.path.abspath(__file__))


def get_git_version():
    """Get version information from git"""
    try:
        commit_hash = subprocess.check_output(
            ['git', 'rev-parse', '--short', 'HEAD'],
            cwd=REPO_ROOT,
            stderr=subprocess.DEVNULL
        ).decode('utf-8').strip()

        status = subprocess.check_output(
            ['git', 'status', '--porcelain'],
            cwd=REPO_ROOT,
            stderr=subprocess.DEVNULL
        ).decode('utf-8').strip()

        return {
            'commit_hash': commit_hash,
            'has_uncommitted': len(status) > 0,
            'source': 'git'
        }
    except (subprocess.CalledProcessError, FileNotFoundError, OSError):
        return None


@lru_cache(maxsize=1)
def get_version_info():
    """Get version information for run manifests"""
    version_info = {
        'manual_version': MANUAL_VERSION,
        'source': 'manual',
        'display_version': MANUAL_VERSION
    }

    git_info = get_git_version()
    if git_info:
        version_info.update(git_info)
        version_info['display_version'] = f"{MANUAL_VERSION} ({git_info['commit_hash']})"
        if git_info['has_uncommitted']:
            version_info['display_version'] += " [modified]"

    return version_info


VERSION = MANUAL_VERSION
