from typing import Annotated, Callable, Literal, Optional, TypedDict, Union

from pydantic import Discriminator

ScanUpdateTy = Literal["slice", "cell"]


class SliceUpdate(TypedDict):
    type: Literal["slice"]
    n: int
    m: int
    d: int
    field: str
    dim: int


class CellUpdate(TypedDict):
    type: Literal["cell"]
    n: int
    m: int
    p: int
    anomalous: bool


ScanUpdate = Annotated[
    Union[SliceUpdate, CellUpdate], Discriminator("type")
]

UpdateCallback = Optional[Callable[[ScanUpdate], None]]


def publish(callback: UpdateCallback, update: ScanUpdate) -> None:
    if callback is not None:
        callback(update)
