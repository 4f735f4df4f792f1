# -*- coding:utf-8 -*-
import logging

__all__ = ['setup_logging']

LOG_FORMAT = '%(asctime)s %(levelname)-7s %(name)s: %(message)s'


def setup_logging(verbose=False):
    """
    configure the root logger once for command-line runs
    :param verbose: DEBUG when True, INFO otherwise
    """
    level = logging.DEBUG if verbose else logging.INFO
    root = logging.getLogger()
    if not root.handlers:
        logging.basicConfig(level=level, format=LOG_FORMAT)
    root.setLevel(level)
    # tensorflow is chatty at INFO
    logging.getLogger('tensorflow').setLevel(logging.WARNING)
