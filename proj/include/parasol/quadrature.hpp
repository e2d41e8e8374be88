#pragma once

#include <vector>

#include "parasol/errors.hpp"
#include "parasol/interval.hpp"

// Interval Gauss-Legendre rules on [0,1].  Node and weight values are
// correctly rounded doubles (generated offline at 60-digit precision) and
// are bracketed outward by one ulp at table load, so an n-point rule applied
// to an interval-evaluated polynomial of degree <= 2n-1 encloses the exact
// integral.

namespace parasol {

namespace detail {

inline constexpr int kGaussMaxPoints = 20;
inline constexpr int kGaussOffset[21] = {0, 1, 3, 6, 10, 15, 21, 28, 36, 45, 55, 66, 78, 91, 105, 120, 136, 153, 171, 190, 210};
inline constexpr double kGaussNode01[] = {
    0x1.0000000000000p-1, 0x1.b0cb174df99c7p-3, 0x1.93cd3a2c8198ep-1,
    0x1.cda042f0236e1p-4, 0x1.0000000000000p-1, 0x1.c64bf7a1fb924p-1,
    0x1.1c6490c2719ecp-4, 0x1.51ee013116102p-2, 0x1.5708ff6774f7fp-1,
    0x1.dc736de7b1cc3p-1, 0x1.80498fd662cb6p-5, 0x1.d89b804cc91f6p-3,
    0x1.0000000000000p-1, 0x1.89d91feccdb82p-1, 0x1.e7fb670299d35p-1,
    0x1.149ad8bfaff12p-5, 0x1.5aebed3546d43p-3, 0x1.85d3b4bf2628fp-2,
    0x1.3d1625a06ceb9p-1, 0x1.a94504b2ae4afp-1, 0x1.eeb652740500fp-1,
    0x1.a0e871839dd6ap-6, 0x1.08ac0c838bc54p-3, 0x1.303510773014fp-2,
    0x1.0000000000000p-1, 0x1.67e577c467f58p-1, 0x1.bdd4fcdf1d0ebp-1,
    0x1.f2f8bc73e3115p-1, 0x1.454e34f533998p-6, 0x1.a06d536d82f88p-4,
    0x1.e5dad4f9af698p-3, 0x1.a214dac30e32fp-2, 0x1.2ef5929e78e69p-1,
    0x1.86894ac19425ap-1, 0x1.cbf255924fa0fp-1, 0x1.f5d58e5856633p-1,
    0x1.04d4d140def9fp-6, 0x1.4fceec3cbf59fp-4, 0x1.8be85bf1004e7p-3,
    0x1.59fb748dbaacdp-2, 0x1.0000000000000p-1, 0x1.530245b922a9ap-1,
    0x1.9d05e903bfec6p-1, 0x1.d60622786814cp-1, 0x1.f7d95975f9083p-1,
    0x1.ab83f3aa1a507p-7, 0x1.1459a858d3435p-4, 0x1.4848dbae43cd1p-3,
    0x1.2219ffb7f4a92p-2, 0x1.b3c6be1db8762p-2, 0x1.261ca0f123c4fp-1,
    0x1.6ef3002405ab7p-1, 0x1.adedc9146f0ccp-1, 0x1.dd74caf4e5979p-1,
    0x1.f951f0315796cp-1, 0x1.64b3a0502c95ap-7, 0x1.ce977287dc569p-5,
    0x1.1453085bcd76dp-3, 0x1.ec7210764e63ep-3, 0x1.75fe7080a5e9fp-2,
    0x1.0000000000000p-1, 0x1.4500c7bfad0b0p-1, 0x1.84e37be26c671p-1,
    0x1.baeb3de90ca25p-1, 0x1.e31688d7823a9p-1, 0x1.fa6d317ebf4dbp-1,
    0x1.2e1c4e37a2fdep-7, 0x1.88bc58023ba64p-5, 0x1.d73d4449dc328p-4,
    0x1.a6961f47f100fp-3, 0x1.43ab96faba731p-2, 0x1.bfe1681c273c7p-2,
    0x1.200f4bf1ec61dp-1, 0x1.5e2a3482a2c67p-1, 0x1.965a782e03bfcp-1,
    0x1.c5185776c479bp-1, 0x1.e7743a7fdc45ap-1, 0x1.fb478ec721741p-1,
    0x1.032513ad33c7cp-7, 0x1.518457479b10dp-5, 0x1.965e39d8e1ebfp-4,
    0x1.6e3bf989fc73ep-3, 0x1.1a5f287b9c5c3p-2, 0x1.8a015e1bc34eep-2,
    0x1.0000000000000p-1, 0x1.3aff50f21e589p-1, 0x1.72d06bc231d1fp-1,
    0x1.a471019d80e30p-1, 0x1.cd3438c4e3c28p-1, 0x1.eae7ba8b864efp-1,
    0x1.fbf36bb14b30ep-1, 0x1.c173c08953d32p-8, 0x1.252176a330b08p-5,
    0x1.61e446e4898f1p-4, 0x1.403649ec3e6eep-3, 0x1.f062a95621ed4p-3,
    0x1.5c9d4db76947fp-2, 0x1.c8ad05924312ap-2, 0x1.1ba97d36de76bp-1,
    0x1.51b159244b5c1p-1, 0x1.83e755aa7784bp-1, 0x1.aff26d84f0644p-1,
    0x1.d3c377236ece2p-1, 0x1.edade895ccf4fp-1, 0x1.fc7d187eed586p-1,
    0x1.89760f3464be3p-8, 0x1.00ed9d83a5dc3p-5, 0x1.36df778000a74p-4,
    0x1.1a323cfca9878p-3, 0x1.b753121ee18b8p-3, 0x1.3631cb6d414a5p-2,
    0x1.98fd167443ed3p-2, 0x1.0000000000000p-1, 0x1.338174c5de097p-1,
    0x1.64e71a495f5adp-1, 0x1.922b3b78479d2p-1, 0x1.b97370c0d59e2p-1,
    0x1.d924110fffeb2p-1, 0x1.eff12627c5a24p-1, 0x1.fced13e197368p-1,
    0x1.5b4f66ca1e083p-8, 0x1.c60a99e906503p-6, 0x1.132ff2bac6df4p-4,
    0x1.f4ee8896e3653p-4, 0x1.874b732542e90p-3, 0x1.157ed32de2c47p-2,
    0x1.6fd1a8cdee642p-2, 0x1.cf5a853312ac1p-2, 0x1.1852bd6676aa0p-1,
    0x1.48172b9908cdfp-1, 0x1.754096690e9ddp-1, 0x1.9e2d2336af45cp-1,
    0x1.c1622eed23936p-1, 0x1.dd9a01a8a7241p-1, 0x1.f1cfab30b7cd8p-1,
    0x1.fd4961326bc3fp-1, 0x1.34d2a4a707b10p-8, 0x1.9410ed9ca72b5p-6,
    0x1.ea8a596157919p-5, 0x1.bf7595ff2d827p-4, 0x1.5e8b739e914f5p-3,
    0x1.f3014078fac8bp-3, 0x1.4c2b59ad4c631p-2, 0x1.a49db8ab3e777p-2,
    0x1.0000000000000p-1, 0x1.2db123aa60c44p-1, 0x1.59ea532959ce8p-1,
    0x1.833fafe1c14ddp-1, 0x1.a85d23185bac3p-1, 0x1.c8114d401a4fbp-1,
    0x1.e1575a69ea86ep-1, 0x1.f35f78931ac6ap-1, 0x1.fd965ab6b1f0ap-1,
    0x1.14647ee3c2624p-8, 0x1.69e3e47b6ef2ap-6, 0x1.b7e679e106665p-5,
    0x1.9203226ca3d29p-4, 0x1.3bb6644bf4924p-3, 0x1.c2cb6f6d21704p-3,
    0x1.2d2ef3a6daa9ap-2, 0x1.7f08c4c4af28ep-2, 0x1.d4985e96ef800p-2,
    0x1.15b3d0b488400p-1, 0x1.407b9d9da86b9p-1, 0x1.6968862c92ab3p-1,
    0x1.8f4d2424b7a3fp-1, 0x1.b11266ed02db7p-1, 0x1.cdbf9bb26b85bp-1,
    0x1.e4819861ef99ap-1, 0x1.f4b0e0dc24887p-1, 0x1.fdd73702387b4p-1,
    0x1.f1a0055d7f745p-9, 0x1.45f98da74e55ep-6, 0x1.8cac652c8f7a8p-5,
    0x1.6b149401dd630p-4, 0x1.1dbb0adb4ace8p-3, 0x1.990aa6d2d8ce1p-3,
    0x1.1223c8a6393a6p-2, 0x1.5deb4f6f23170p-2, 0x1.ade578bab0527p-2,
    0x1.0000000000000p-1, 0x1.290d43a2a7d6cp-1, 0x1.510a58486e748p-1,
    0x1.76ee1bace362dp-1, 0x1.99bd564b49cc8p-1, 0x1.b8913d492d4c6p-1,
    0x1.d29d6d7fc453ap-1, 0x1.e73539ad37086p-1, 0x1.f5d03392c58d5p-1,
    0x1.fe0e5ffaa2809p-1, 0x1.c252f9c718fd2p-9, 0x1.2724584289613p-6,
    0x1.677cdf4601373p-5, 0x1.497d0a840a463p-4, 0x1.03c191972b564p-3,
    0x1.74ae580b1de4ap-3, 0x1.f4df47d810013p-3, 0x1.40a998754d69ep-2,
    0x1.8b5fa725b5d10p-2, 0x1.d8d1840ce8f2ap-2, 0x1.13973df98b86bp-1,
    0x1.3a502c6d25178p-1, 0x1.5fab33c5594b1p-1, 0x1.82c82e09fbffbp-1,
    0x1.a2d469fd3886ep-1, 0x1.bf0f9b9a352a7p-1, 0x1.d6d05eaf7eb74p-1,
    0x1.e988320b9fec9p-1, 0x1.f6c6dd3debb4fp-1, 0x1.fe3dad0638e70p-1,
};
inline constexpr double kGaussWeight01[] = {
    0x1.0000000000000p+0, 0x1.0000000000000p-1, 0x1.0000000000000p-1,
    0x1.1c71c71c71c72p-2, 0x1.c71c71c71c71cp-2, 0x1.1c71c71c71c72p-2,
    0x1.64340f7e7b66bp-3, 0x1.4de5f840c24cap-2, 0x1.4de5f840c24cap-2,
    0x1.64340f7e7b66bp-3, 0x1.e539ec36e038cp-4, 0x1.ea1da25ae415bp-3,
    0x1.23456789abcdfp-2, 0x1.ea1da25ae415bp-3, 0x1.e539ec36e038cp-4,
    0x1.5edf601e2dbf8p-4, 0x1.716b7b5794c1cp-3, 0x1.df24d499545e8p-3,
    0x1.df24d499545e8p-3, 0x1.716b7b5794c1cp-3, 0x1.5edf601e2dbf8p-4,
    0x1.092f69f826d57p-4, 0x1.1e6b1713d8644p-3, 0x1.86fe74ee32b3dp-3,
    0x1.abfd7e03c2fa6p-3, 0x1.86fe74ee32b3dp-3, 0x1.1e6b1713d8644p-3,
    0x1.092f69f826d57p-4, 0x1.9ea1d04ca0374p-5, 0x1.c76fb531d2b96p-4,
    0x1.413c50a255615p-3, 0x1.736360b199343p-3, 0x1.736360b199343p-3,
    0x1.413c50a255615p-3, 0x1.c76fb531d2b96p-4, 0x1.9ea1d04ca0374p-5,
    0x1.4ce65f803eef8p-5, 0x1.71f7a9b222beap-4, 0x1.0add87c827506p-3,
    0x1.3fd7e9838d512p-3, 0x1.522a43f65486ap-3, 0x1.3fd7e9838d512p-3,
    0x1.0add87c827506p-3, 0x1.71f7a9b222beap-4, 0x1.4ce65f803eef8p-5,
    0x1.1115f8b62dc1fp-5, 0x1.32138c878efe5p-4, 0x1.c0b059d00bc31p-4,
    0x1.13baa7a559bfep-3, 0x1.2e9de7014d6efp-3, 0x1.2e9de7014d6efp-3,
    0x1.13baa7a559bfep-3, 0x1.c0b059d00bc31p-4, 0x1.32138c878efe5p-4,
    0x1.1115f8b62dc1fp-5, 0x1.c8097265bb925p-6, 0x1.013047def88cdp-4,
    0x1.7d85b8dbff199p-4, 0x1.dd94b1446e05cp-4, 0x1.0d1ca26fa590fp-3,
    0x1.1779ac87e04d6p-3, 0x1.0d1ca26fa590fp-3, 0x1.dd94b1446e05cp-4,
    0x1.7d85b8dbff199p-4, 0x1.013047def88cdp-4, 0x1.c8097265bb925p-6,
    0x1.8275d9dea6d8fp-6, 0x1.b60602bce6181p-5, 0x1.47d7258f22d8fp-4,
    0x1.a0163e6b1ab72p-4, 0x1.de3155c256ab5p-4, 0x1.fe40ce6d4f025p-4,
    0x1.fe40ce6d4f025p-4, 0x1.de3155c256ab5p-4, 0x1.a0163e6b1ab72p-4,
    0x1.47d7258f22d8fp-4, 0x1.b60602bce6181p-5, 0x1.8275d9dea6d8fp-6,
    0x1.4ba51c8f4cebfp-6, 0x1.795464d0fbf51p-5, 0x1.1c69b70565cd5p-4,
    0x1.6cd7ccca4a8d3p-4, 0x1.a99b75be0a123p-4, 0x1.cf6d8e56e9816p-4,
    0x1.dc43fd1e15b8ep-4, 0x1.cf6d8e56e9816p-4, 0x1.a99b75be0a123p-4,
    0x1.6cd7ccca4a8d3p-4, 0x1.1c69b70565cd5p-4, 0x1.795464d0fbf51p-5,
    0x1.4ba51c8f4cebfp-6, 0x1.1fb2d8b27f553p-6, 0x1.4853d8adc703dp-5,
    0x1.f1bd74ef611c1p-5, 0x1.41f3bbee2d2f2p-4, 0x1.7bfb8e2a8f57ep-4,
    0x1.a43f1796fab09p-4, 0x1.b8dc415514e34p-4, 0x1.b8dc415514e34p-4,
    0x1.a43f1796fab09p-4, 0x1.7bfb8e2a8f57ep-4, 0x1.41f3bbee2d2f2p-4,
    0x1.f1bd74ef611c1p-5, 0x1.4853d8adc703dp-5, 0x1.1fb2d8b27f553p-6,
    0x1.f7dc7227a291bp-7, 0x1.2038260b5d026p-5, 0x1.b6ec9635f1146p-5,
    0x1.1dd73b4963161p-4, 0x1.5484f30a86ed1p-4, 0x1.7d41fa76dc267p-4,
    0x1.96633f1fd02cep-4, 0x1.9ee1575f9c980p-4, 0x1.96633f1fd02cep-4,
    0x1.7d41fa76dc267p-4, 0x1.5484f30a86ed1p-4, 0x1.1dd73b4963161p-4,
    0x1.b6ec9635f1146p-5, 0x1.2038260b5d026p-5, 0x1.f7dc7227a291bp-7,
    0x1.bcddab4b7c211p-7, 0x1.fdfb1a2c1265dp-6, 0x1.85c4ee79cc258p-5,
    0x1.fe7af2bad386ap-5, 0x1.325f61bca3cbfp-4, 0x1.5a6ebbb5a75fcp-4,
    0x1.75f8c77e0c00fp-4, 0x1.83feae80e4dfcp-4, 0x1.83feae80e4dfcp-4,
    0x1.75f8c77e0c00fp-4, 0x1.5a6ebbb5a75fcp-4, 0x1.325f61bca3cbfp-4,
    0x1.fe7af2bad386ap-5, 0x1.85c4ee79cc258p-5, 0x1.fdfb1a2c1265dp-6,
    0x1.bcddab4b7c211p-7, 0x1.8ba552c4c1996p-7, 0x1.c653101d35dfbp-6,
    0x1.5c4edd40005e6p-5, 0x1.ca46b78a575fap-5, 0x1.14c260589486bp-4,
    0x1.3b7c580f4c73ap-4, 0x1.581288e2d8ab9p-4, 0x1.6999b529f4c56p-4,
    0x1.6f81a18c80154p-4, 0x1.6999b529f4c56p-4, 0x1.581288e2d8ab9p-4,
    0x1.3b7c580f4c73ap-4, 0x1.14c260589486bp-4, 0x1.ca46b78a575fap-5,
    0x1.5c4edd40005e6p-5, 0x1.c653101d35dfbp-6, 0x1.8ba552c4c1996p-7,
    0x1.622821caa2076p-7, 0x1.9742f734750c9p-6, 0x1.390a2fc0485c6p-5,
    0x1.9d7567a3a5731p-5, 0x1.f5fc72cc7c308p-5, 0x1.2009647765816p-4,
    0x1.3ccb51a6e0a73p-4, 0x1.507030698595dp-4, 0x1.5a6752598dbdap-4,
    0x1.5a6752598dbdap-4, 0x1.507030698595dp-4, 0x1.3ccb51a6e0a73p-4,
    0x1.2009647765816p-4, 0x1.f5fc72cc7c308p-5, 0x1.9d7567a3a5731p-5,
    0x1.390a2fc0485c6p-5, 0x1.9742f734750c9p-6, 0x1.622821caa2076p-7,
    0x1.3edca7fdf97ebp-7, 0x1.6f1e3ecb55ab4p-6, 0x1.1ace735068375p-5,
    0x1.76be3dac75c87p-5, 0x1.c8fa1b5f341d9p-5, 0x1.07b02852b1e2bp-4,
    0x1.240efb90355b0p-4, 0x1.38dd6714e5d79p-4, 0x1.459174fbae09cp-4,
    0x1.49d6ea57ce6f4p-4, 0x1.459174fbae09cp-4, 0x1.38dd6714e5d79p-4,
    0x1.240efb90355b0p-4, 0x1.07b02852b1e2bp-4, 0x1.c8fa1b5f341d9p-5,
    0x1.76be3dac75c87p-5, 0x1.1ace735068375p-5, 0x1.6f1e3ecb55ab4p-6,
    0x1.3edca7fdf97ebp-7, 0x1.209680274e8afp-7, 0x1.4c9b5ea53b67fp-6,
    0x1.00b467df7e475p-5, 0x1.5519fe196e24ap-5, 0x1.a1817a317a821p-5,
    0x1.e41ff31573b48p-5, 0x1.0db2c5db26dffp-4, 0x1.230348f34a535p-4,
    0x1.31819b52c5992p-4, 0x1.38d6c490a3370p-4, 0x1.38d6c490a3370p-4,
    0x1.31819b52c5992p-4, 0x1.230348f34a535p-4, 0x1.0db2c5db26dffp-4,
    0x1.e41ff31573b48p-5, 0x1.a1817a317a821p-5, 0x1.5519fe196e24ap-5,
    0x1.00b467df7e475p-5, 0x1.4c9b5ea53b67fp-6, 0x1.209680274e8afp-7,
};

} // namespace detail

struct QuadRule01 {
    std::vector<Interval> nodes;
    std::vector<Interval> weights;
};

/// n-point rule on [0,1], exact for polynomial degree <= 2n-1.
inline const QuadRule01& gauss_rule01(int n) {
    if (n < 1 || n > detail::kGaussMaxPoints)
        throw DomainError("gauss_rule01: unsupported point count");
    static const std::vector<QuadRule01> cache = [] {
        std::vector<QuadRule01> all(detail::kGaussMaxPoints + 1);
        for (int m = 1; m <= detail::kGaussMaxPoints; ++m) {
            QuadRule01& r = all[std::size_t(m)];
            for (int i = 0; i < m; ++i) {
                double x = detail::kGaussNode01[detail::kGaussOffset[m - 1] + i];
                double w = detail::kGaussWeight01[detail::kGaussOffset[m - 1] + i];
                r.nodes.emplace_back(rnd::next_down(x), rnd::next_up(x));
                r.weights.emplace_back(rnd::next_down(w), rnd::next_up(w));
            }
        }
        return all;
    }();
    return cache[std::size_t(n)];
}

/// Point count whose rule integrates the given polynomial degree exactly.
inline int gauss_points_for_degree(int degree) {
    int n = degree / 2 + 1;
    if (n > detail::kGaussMaxPoints)
        throw DomainError("gauss_points_for_degree: degree too high for the table");
    return n;
}

} // namespace parasol
