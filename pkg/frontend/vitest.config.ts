import { defineConfig } from 'vitest/config';

// The integration suite trains a model and boots the real service in
// beforeAll, hence the long hook timeout.
export default defineConfig({
    test: {
        include: ['tests/**/*.test.ts'],
        testTimeout: 60000,
        hookTimeout: 240000,
    },
});
