# importing every affinity function registers it as an AffinityFunction subclass
from .best_common_friend import BestCommonFriendAffinity, best_common_friend  # noqa
from .best_friend import BestFriendAffinity, best_friend  # noqa
from .combined import CombinedAffinity, combine  # noqa
from .friends_forever import FriendsForeverAffinity, friends_forever  # noqa
from .machiavelli import MachiavelliAffinity, machiavelli  # noqa
from .social_networking import SocialNetworkingAffinity, social_networking  # noqa
