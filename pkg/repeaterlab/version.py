# AUTOMATICALLY GENERATED BY setup.py
VERSION = "0.1.0"
