"""Global loss registry."""

from codet.errors import ArgumentError
from codet.losses.base import LossDefinition, LossProvider

_providers: list[LossProvider] = []
_loss_cache: dict[str, LossDefinition] = {}


def register_provider(provider: LossProvider) -> None:
    """Register a loss provider."""
    _providers.append(provider)
    for loss in provider.list_losses():
        _loss_cache[loss.identifier] = loss
        for alias in loss.aliases:
            _loss_cache.setdefault(alias, loss)


def find_loss(identifier: str) -> LossDefinition | None:
    """Look up a loss by identifier or alias."""
    return _loss_cache.get(identifier.lower().replace("-", "_"))


def get_loss(identifier: str) -> LossDefinition:
    """Look up a loss, raising ArgumentError for unknown names."""
    loss = find_loss(identifier)
    if loss is None:
        known = ", ".join(sorted(d.identifier for d in list_losses()))
        raise ArgumentError(f"Unknown loss '{identifier}' (known: {known})")
    return loss


def list_losses() -> list[LossDefinition]:
    """List all registered losses, without aliases."""
    seen: dict[str, LossDefinition] = {}
    for loss in _loss_cache.values():
        seen.setdefault(loss.identifier, loss)
    return list(seen.values())


def list_losses_by_category() -> dict[str, list[LossDefinition]]:
    """List all losses grouped by category."""
    result: dict[str, list[LossDefinition]] = {}
    for loss in list_losses():
        result.setdefault(loss.category, []).append(loss)
    return result


def _init_builtin_providers() -> None:
    """Initialize the built-in providers."""
    from codet.losses.providers.classwise import ClasswiseLossProvider
    from codet.losses.providers.pairwise import PairwiseLossProvider

    register_provider(ClasswiseLossProvider())
    register_provider(PairwiseLossProvider())


_init_builtin_providers()
