// placeholder; replaced by the full CLI
#include <cstdio>
int main() {
    std::puts("berncli: not yet wired");
    return 0;
}
