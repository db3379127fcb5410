namespace hfsk {}
