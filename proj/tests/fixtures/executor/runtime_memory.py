# Asks for far more than the address-space cap allows.
blob = bytearray(8 * 1024 * 1024 * 1024)
assert len(blob) > 0
