class CapacityError(ValueError):
    """Input is larger than an exact algorithm is configured to handle."""

    def __init__(self, what: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
