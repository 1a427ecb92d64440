from .config import Config, load_config, build_config

__all__ = ['Config', 'load_config', 'build_config']
